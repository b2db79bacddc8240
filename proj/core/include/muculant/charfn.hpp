#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "muculant/pmf.hpp"

namespace muculant {

/// Uniform grid mu_k = -pi + 2 pi k / N, k = 0..N-1, N a power of two >= 64.
/// mu = 0 sits at k = N/2 and mu = -pi (equivalently pi) at k = 0.
class FrequencyGrid {
 public:
  static constexpr std::size_t kDefaultSize = 4096;
  static constexpr std::size_t kMinSize = 64;

  explicit FrequencyGrid(std::size_t n_points = kDefaultSize);

  /// Smallest admissible grid with at least `n` points.
  [[nodiscard]] static FrequencyGrid at_least(std::size_t n);

  [[nodiscard]] std::size_t size() const noexcept { return n_; }
  [[nodiscard]] std::size_t zero_index() const noexcept { return n_ / 2; }
  [[nodiscard]] double spacing() const noexcept;
  [[nodiscard]] double point(std::size_t k) const noexcept;
  [[nodiscard]] std::vector<double> points() const;

  friend bool operator==(const FrequencyGrid&, const FrequencyGrid&) = default;

 private:
  std::size_t n_;
};

enum class CharFnSource { exact_from_pmf, empirical, reconstructed };

/// Samples of Phi(mu) on a grid.
struct CharFnSamples {
  FrequencyGrid grid;
  std::vector<std::complex<double>> values;
  CharFnSource source = CharFnSource::exact_from_pmf;

  [[nodiscard]] double min_abs() const noexcept;
};

/// ln|Phi| and the unwrapped phase arg*(Phi) on the grid.
///
/// Both arrays are built from the [0, pi] half and mirrored (even magnitude,
/// odd phase), so phase(0) == 0 exactly. The k = 0 entry holds the value at
/// mu = -pi, i.e. -phase(pi).
struct LogCharFnSamples {
  FrequencyGrid grid;
  std::vector<double> log_magnitude;
  std::vector<double> phase;
  double min_abs = 0.0;

  /// Net number of 2 pi turns of Phi over one period, phase(pi) / pi.
  [[nodiscard]] std::int64_t winding() const noexcept;
};

inline constexpr double kVanishingThreshold = 1e-8;

/// Exact Phi(mu_k) = sum f[xi] e^{j mu_k xi} via an N-point DFT.
/// Raises GridTooCoarse unless N >= 4 * max(support width, max |xi| + 1).
[[nodiscard]] CharFnSamples eval_charfn(const Pmf& f, const FrequencyGrid& grid);

/// Smallest grid eval_charfn() accepts for f (never below the default size
/// when `at_least_default` is set).
[[nodiscard]] FrequencyGrid grid_for(const Pmf& f, bool at_least_default = true);

/// Empirical characteristic function (1/m) sum_i e^{j mu_k X_i}.
[[nodiscard]] CharFnSamples empirical_charfn(std::span<const std::int64_t> samples,
                                             const FrequencyGrid& grid);

/// Same as empirical_charfn() from a histogram: counts[i] observations at
/// offset + i.
[[nodiscard]] CharFnSamples empirical_charfn_from_counts(Index offset,
                                                         std::span<const std::uint64_t> counts,
                                                         const FrequencyGrid& grid);

/// Complex logarithm with continuous phase. Raises CharFnVanishes if any
/// |Phi(mu_k)| < 1e-8.
[[nodiscard]] LogCharFnSamples complex_log(const CharFnSamples& samples);

/// Adds multiples of 2 pi so that consecutive differences are at most pi in
/// magnitude. The first element is unchanged.
[[nodiscard]] std::vector<double> unwrap_phase(std::span<const double> principal);

}  // namespace muculant
