#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace muculant {

using Index = std::int64_t;

/// Closed integer interval [lo, hi].
struct IntRange {
  Index lo = 0;
  Index hi = 0;

  [[nodiscard]] constexpr Index size() const noexcept { return hi < lo ? 0 : hi - lo + 1; }
  [[nodiscard]] constexpr bool contains(Index n) const noexcept { return lo <= n && n <= hi; }
  friend constexpr bool operator==(const IntRange&, const IntRange&) = default;
};

/// Mass kept when truncating an infinite-support law.
inline constexpr double kTruncationMass = 1.0 - 1e-12;

/// Integer-supported probability mass function.
///
/// Stored canonically: `probs()[i]` is the mass at `offset() + i`, the first and
/// last entries are nonzero, and `total_mass() + tail_mass_bound() == 1` up to
/// rounding. Instances are only produced by validate_pmf() or by operations
/// that preserve these invariants.
class Pmf {
 public:
  [[nodiscard]] Index offset() const noexcept { return offset_; }
  [[nodiscard]] std::span<const double> probs() const noexcept { return probs_; }
  [[nodiscard]] std::size_t size() const noexcept { return probs_.size(); }
  [[nodiscard]] Index last_index() const noexcept {
    return offset_ + static_cast<Index>(probs_.size()) - 1;
  }
  [[nodiscard]] IntRange support() const noexcept { return {offset_, last_index()}; }
  [[nodiscard]] double tail_mass_bound() const noexcept { return tail_mass_bound_; }
  [[nodiscard]] double total_mass() const noexcept;

  /// Mass at xi; zero outside the stored support.
  [[nodiscard]] double at(Index xi) const noexcept;

 private:
  friend Pmf validate_pmf(Index offset, std::vector<double> values);

  Pmf(Index offset, std::vector<double> probs, double tail) noexcept
      : offset_(offset), probs_(std::move(probs)), tail_mass_bound_(tail) {}

  Index offset_;
  std::vector<double> probs_;
  double tail_mass_bound_;
};

/// Real sequence on the integers with finite support; may carry negative
/// entries (e.g. an allpass component that fails to be a PMF).
struct SignedSequence {
  Index offset = 0;
  std::vector<double> values;
  double sum = 0.0;

  [[nodiscard]] double at(Index xi) const noexcept;
  [[nodiscard]] Index last_index() const noexcept {
    return offset + static_cast<Index>(values.size()) - 1;
  }
};

/// values[k - 1] holds the k-th cumulant.
struct CumulantVector {
  std::vector<double> values;

  [[nodiscard]] double kappa(int k) const { return values.at(static_cast<std::size_t>(k - 1)); }
  [[nodiscard]] int order() const noexcept { return static_cast<int>(values.size()); }
};

/// Validates and canonicalizes a probability vector starting at `offset`.
///
/// Entries in [-1e-14, 0) are clamped to zero; anything more negative raises
/// NegativeMass. The sum must lie within 1e-6 of one (NotNormalized otherwise).
/// Sums above one are rescaled; a deficit is kept and recorded as the tail
/// mass bound. Leading and trailing zeros are trimmed.
[[nodiscard]] Pmf validate_pmf(Index offset, std::vector<double> values);

/// Law of the sum of independent variables.
[[nodiscard]] Pmf convolve(const Pmf& f, const Pmf& g);

/// Law of -X.
[[nodiscard]] Pmf reflect(const Pmf& f);

/// Law of X + shift.
[[nodiscard]] Pmf shift(const Pmf& f, Index by);

/// Law of X - X' for i.i.d. copies; even about zero.
[[nodiscard]] Pmf autocorrelation(const Pmf& f);

/// Sum over the support of xi^k f[xi]. Ill-conditioned for wide supports
/// beyond k = 12.
[[nodiscard]] double raw_moment(const Pmf& f, int k);

/// Raw moments of orders 1..k_max.
[[nodiscard]] std::vector<double> raw_moments(const Pmf& f, int k_max);

/// Standard moment-to-cumulant recursion; moments[i] = mu'_{i+1}.
[[nodiscard]] CumulantVector moments_to_cumulants(std::span<const double> moments);

/// True iff the z-transform sum f[xi] z^{-xi} has all zeros strictly inside
/// the unit circle (modulus below 1 - 1e-10). Requires a causal PMF.
[[nodiscard]] bool is_minimum_phase(const Pmf& f);

/// Zeros of sum f[xi] w^{L - xi}, L = last_index(); the roots checked by
/// is_minimum_phase().
[[nodiscard]] std::vector<std::complex<double>> transfer_zeros(const Pmf& f);

}  // namespace muculant
