#pragma once

#include "muculant/charfn.hpp"
#include "muculant/muculants.hpp"
#include "muculant/pmf.hpp"

namespace muculant {

/// f = f_min * f_allpass, in muculant and sequence form.
struct Decomposition {
  MuculantSeq complex_muculants;
  MuculantSeq minphase_muculants;
  MuculantSeq allpass_muculants;
  SignedSequence minphase_seq;
  SignedSequence allpass_seq;
  bool minphase_is_pmf = false;
  bool allpass_is_pmf = false;
};

/// Causal complex sequence c[0] / 2, c[1], c[2], ... from power muculants.
/// Raises PreconditionViolated unless power.kind is power.
[[nodiscard]] MuculantSeq minphase_from_power(const MuculantSeq& power);

/// Decomposes f using muculants for |n| <= n_max on the smallest grid that
/// admits both f and n_max (never below the default size).
[[nodiscard]] Decomposition decompose(const Pmf& f, Index n_max);
[[nodiscard]] Decomposition decompose(const Pmf& f, Index n_max, const FrequencyGrid& grid);

/// Sum of the allpass sequence. Raises PreconditionViolated when the
/// minimum-phase component is not a PMF.
[[nodiscard]] double allpass_sum(const Decomposition& d);

/// Nonnegative within 1e-10 and summing to 1 within 1e-8.
[[nodiscard]] bool is_pmf_like(const SignedSequence& s) noexcept;

}  // namespace muculant
