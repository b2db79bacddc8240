#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <vector>

#include "muculant/charfn.hpp"
#include "muculant/pmf.hpp"

namespace muculant {

enum class MuculantKind { complex, power };

/// Real coefficient sequence indexed n = n_min..n_max (n_min <= 0 <= n_max).
///
/// `linear_phase` is the integer winding M of the characteristic function.
/// The stored values already include its Fourier coefficients
/// M (-1)^{n+1} / n; the field lets synthesis use the exact e^{j M mu}
/// instead of the slowly converging truncated series.
struct MuculantSeq {
  Index n_min = 0;
  Index n_max = 0;
  std::vector<double> values;
  MuculantKind kind = MuculantKind::complex;
  double imag_residual = 0.0;
  std::int64_t linear_phase = 0;

  /// Coefficient at n; zero outside the stored range.
  [[nodiscard]] double at(Index n) const noexcept;
  [[nodiscard]] IntRange range() const noexcept { return {n_min, n_max}; }
  [[nodiscard]] double sum() const noexcept;
};

/// Builds a sequence over `range` (hulled to contain 0) from a coefficient
/// function.
template <typename Fn>
[[nodiscard]] MuculantSeq make_muculants(IntRange range, MuculantKind kind, std::int64_t linear_phase,
                                         Fn&& coefficient) {
  MuculantSeq s;
  s.n_min = std::min<Index>(range.lo, 0);
  s.n_max = std::max<Index>(range.hi, 0);
  s.kind = kind;
  s.linear_phase = linear_phase;
  s.values.reserve(static_cast<std::size_t>(s.n_max - s.n_min + 1));
  for (Index n = s.n_min; n <= s.n_max; ++n) s.values.push_back(coefficient(n));
  return s;
}

/// Fourier coefficient of j M mu on (-pi, pi): M (-1)^{n+1} / n, zero at n = 0.
[[nodiscard]] double linear_phase_coefficient(std::int64_t m, Index n) noexcept;

inline constexpr double kImagResidualLimit = 1e-8;

/// Complex muculants for n in [-n_max, n_max] by N-point Fourier analysis of
/// log_magnitude + j phase. Requires n_max <= N / 4 (GridTooCoarse).
/// Raises ImagResidualTooLarge if a discarded imaginary part reaches 1e-8.
[[nodiscard]] MuculantSeq complex_muculants(const LogCharFnSamples& logcf, Index n_max);

/// Convenience: eval_charfn -> complex_log -> complex_muculants.
[[nodiscard]] MuculantSeq complex_muculants(const Pmf& f, Index n_max, const FrequencyGrid& grid);

/// Fourier coefficients of ln|Phi|^2 (even in n).
[[nodiscard]] MuculantSeq power_muculants(const CharFnSamples& cf, Index n_max);

/// Causal cepstrum recursion; no integration. Needs offset 0, f[0] > 1e-14
/// and a minimum-phase f (NotApplicable otherwise). Returns n in [0, n_max].
[[nodiscard]] MuculantSeq recursive_minphase_muculants(const Pmf& f, Index n_max);

/// Phi(mu_k) = exp(sum_n m[n] e^{j mu_k n}).
[[nodiscard]] CharFnSamples reconstruct_charfn(const MuculantSeq& m, const FrequencyGrid& grid);

/// Inverse Fourier analysis of reconstruct_charfn() restricted to `support`.
/// Raises SupportTooSmall when the mass outside the support exceeds 1e-6.
[[nodiscard]] SignedSequence reconstruct_sequence(const MuculantSeq& m, IntRange support);

/// kappa_k = sum_n n^k m[n], k = 1..k_max. Raises TruncationUnsafe when
/// n_max^k times the largest coefficient in the outer 10% of indices exceeds
/// 1e-6 for some k.
[[nodiscard]] CumulantVector cumulants_from_muculants(const MuculantSeq& m, int k_max);

/// Coefficient-wise a + b and a - b over the union of ranges; linear phases
/// add (subtract). Kinds must match.
[[nodiscard]] MuculantSeq add(const MuculantSeq& a, const MuculantSeq& b);
[[nodiscard]] MuculantSeq subtract(const MuculantSeq& a, const MuculantSeq& b);

}  // namespace muculant
