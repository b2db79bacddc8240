#include "muculant/decomposition.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "muculant/error.hpp"

namespace muculant {

namespace {

constexpr Index kMaxWindow = Index{1} << 24;

// Starts from [-2L, 2L] (L = support width) hulled with the input support and
// 0; doubled while the reconstruction leaks out of it.
SignedSequence reconstruct_component(const MuculantSeq& m, const Pmf& f) {
  const Index width = static_cast<Index>(f.size());
  Index half = 2 * width;
  for (;;) {
    const IntRange window{std::min({-half, f.offset(), Index{0}}), std::max({half, f.last_index(), Index{0}})};
    try {
      return reconstruct_sequence(m, window);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::SupportTooSmall || window.size() > kMaxWindow) throw;
    }
    half *= 2;
  }
}

}  // namespace

bool is_pmf_like(const SignedSequence& s) noexcept {
  const bool nonnegative = std::all_of(s.values.begin(), s.values.end(), [](double v) { return v >= -1e-10; });
  return nonnegative && std::abs(s.sum - 1.0) <= 1e-8;
}

MuculantSeq minphase_from_power(const MuculantSeq& power) {
  if (power.kind != MuculantKind::power) {
    throw Error(ErrorCode::PreconditionViolated, "minphase_from_power needs power muculants");
  }
  return make_muculants({0, power.n_max}, MuculantKind::complex, 0,
                        [&](Index n) { return n == 0 ? 0.5 * power.at(0) : power.at(n); });
}

Decomposition decompose(const Pmf& f, Index n_max, const FrequencyGrid& grid) {
  const auto cf = eval_charfn(f, grid);
  Decomposition d;
  d.complex_muculants = complex_muculants(complex_log(cf), n_max);
  d.minphase_muculants = minphase_from_power(power_muculants(cf, n_max));
  d.allpass_muculants = subtract(d.complex_muculants, d.minphase_muculants);
  d.minphase_seq = reconstruct_component(d.minphase_muculants, f);
  d.allpass_seq = reconstruct_component(d.allpass_muculants, f);
  d.minphase_is_pmf = is_pmf_like(d.minphase_seq);
  d.allpass_is_pmf = is_pmf_like(d.allpass_seq);
  return d;
}

Decomposition decompose(const Pmf& f, Index n_max) {
  if (n_max < 0) throw Error(ErrorCode::InvalidArgument, "n_max must be nonnegative");
  const std::size_t needed = std::max(grid_for(f).size(), 4 * static_cast<std::size_t>(n_max));
  return decompose(f, n_max, FrequencyGrid::at_least(needed));
}

double allpass_sum(const Decomposition& d) {
  if (!d.minphase_is_pmf) {
    throw Error(ErrorCode::PreconditionViolated, "minimum-phase component is not a PMF");
  }
  return d.allpass_seq.sum;
}

}  // namespace muculant
