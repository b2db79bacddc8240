#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "muculant/charfn.hpp"
#include "muculant/muculants.hpp"
#include "muculant/pmf.hpp"

namespace muculant {

inline constexpr std::size_t kMinSampleSize = 100;
inline constexpr double kEmpiricalVanishingThreshold = 1e-3;

/// complex_muculants(complex_log(empirical_charfn(samples))) with the
/// sample-size (PreconditionViolated), grid (GridTooCoarse) and |Phi| >= 1e-3
/// (CharFnVanishes) guards.
[[nodiscard]] MuculantSeq estimate_muculants(std::span<const std::int64_t> samples, const FrequencyGrid& grid,
                                             Index n_max);

/// Same from a histogram: counts[i] observations at offset + i.
[[nodiscard]] MuculantSeq estimate_muculants_from_counts(Index offset, std::span<const std::uint64_t> counts,
                                                         const FrequencyGrid& grid, Index n_max,
                                                         double min_abs = kEmpiricalVanishingThreshold);

enum class PoissonStatistic {
  /// v^T S^+ v with S the bootstrap covariance of the window coefficients v.
  whitened,
  /// Sum of v[n]^2.
  sum_of_squares,
};

struct PoissonTestOptions {
  double alpha = 0.05;
  /// Indices 0 and 1 are always excluded.
  IntRange window{-8, 8};
  std::size_t n_bootstrap = 1000;
  std::uint64_t seed = 0;
  std::size_t grid_size = FrequencyGrid::kDefaultSize;
  PoissonStatistic statistic = PoissonStatistic::whitened;
  /// 0 picks the hardware concurrency. Results do not depend on it.
  unsigned threads = 0;
  /// Smallest admissible |Phi_hat|, applied alike to the observed sample and
  /// to every replicate.
  double min_abs = kVanishingThreshold;
};

struct PoissonTestResult {
  double statistic = 0.0;
  double lambda_hat = 0.0;
  double threshold = 0.0;
  double p_value = 1.0;
  bool reject = false;
  IntRange window{-8, 8};
  std::size_t n_bootstrap = 0;
  /// Replicates whose empirical charfn vanished; excluded from calibration.
  std::size_t n_bootstrap_failed = 0;
  std::uint64_t seed = 0;
  double alpha = 0.05;
  PoissonStatistic statistic_kind = PoissonStatistic::whitened;
  std::size_t sample_size = 0;
  std::size_t grid_size = 0;
};

/// Window indices used by the test: `window` without 0 and 1.
[[nodiscard]] std::vector<Index> test_indices(IntRange window);

/// Coefficients of m at test_indices(window).
[[nodiscard]] std::vector<double> window_coefficients(const MuculantSeq& m, IntRange window);

/// Sum of squared coefficients over test_indices(window).
[[nodiscard]] double windowed_sum_of_squares(const MuculantSeq& m, IntRange window);

/// Parametric bootstrap test of H0: the samples are i.i.d. Poisson.
/// Raises NegativeSampleValue, EmptySample, PreconditionViolated (m < 100)
/// and CharFnVanishes when the observed |Phi_hat| drops below
/// options.min_abs.
[[nodiscard]] PoissonTestResult poisson_test(std::span<const std::int64_t> samples,
                                             const PoissonTestOptions& options = {});

/// Counts of a multinomial(m, probs) draw, by sequential conditional
/// binomials. Exposed for tests.
template <typename Rng>
std::vector<std::uint64_t> multinomial_counts(std::uint64_t m, std::span<const double> probs, Rng& rng);

/// SplitMix64 finalizer; seeds replicate substreams.
[[nodiscard]] std::uint64_t splitmix64(std::uint64_t x) noexcept;

template <typename Rng>
std::vector<std::uint64_t> multinomial_counts(std::uint64_t m, std::span<const double> probs, Rng& rng) {
  std::vector<std::uint64_t> counts(probs.size(), 0);
  if (probs.empty()) return counts;
  std::vector<double> tail(probs.size() + 1, 0.0);
  for (std::size_t i = probs.size(); i-- > 0;) tail[i] = tail[i + 1] + probs[i];

  std::uint64_t left = m;
  for (std::size_t i = 0; i + 1 < probs.size() && left > 0; ++i) {
    const double q = tail[i] > 0.0 ? std::min(1.0, probs[i] / tail[i]) : 1.0;
    std::binomial_distribution<std::uint64_t> draw(left, q);
    counts[i] = draw(rng);
    left -= counts[i];
  }
  counts.back() += left;
  return counts;
}

}  // namespace muculant
