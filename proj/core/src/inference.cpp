#include "muculant/inference.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <functional>
#include <optional>
#include <string>
#include <thread>

#include <Eigen/Dense>

#include "muculant/error.hpp"
#include "muculant/zoo.hpp"

namespace muculant {

namespace {

void check_grid(Index lo, Index hi, const FrequencyGrid& grid) {
  const Index extent = std::max(hi - lo + 1, std::max(std::abs(lo), std::abs(hi)) + 1);
  if (grid.size() < 4 * static_cast<std::size_t>(extent)) {
    throw Error(ErrorCode::GridTooCoarse, "grid of " + std::to_string(grid.size()) + " points, sample range needs " +
                                              std::to_string(4 * extent));
  }
}

MuculantSeq estimate_checked(Index offset, std::span<const std::uint64_t> counts, const FrequencyGrid& grid,
                             Index n_max, double threshold) {
  check_grid(offset, offset + static_cast<Index>(counts.size()) - 1, grid);
  const auto cf = empirical_charfn_from_counts(offset, counts, grid);
  const double min_abs = cf.min_abs();
  if (min_abs < threshold) {
    throw Error(ErrorCode::CharFnVanishes, "empirical min |Phi| = " + short_number(min_abs));
  }
  return complex_muculants(complex_log(cf), n_max);
}

Index window_extent(IntRange w) { return std::max(std::abs(w.lo), std::abs(w.hi)); }

std::vector<double> null_probabilities(double lambda) {
  if (lambda <= 0.0) return {1.0};
  const Pmf f = zoo_pmf(Poisson{lambda});
  // Poisson supports start at 0, but very large lambda trims leading zeros.
  std::vector<double> probs(static_cast<std::size_t>(f.offset()), 0.0);
  probs.insert(probs.end(), f.probs().begin(), f.probs().end());
  return probs;
}

// Order-independent parallel map over [0, count).
template <typename Fn>
void parallel_for(std::size_t count, unsigned threads, Fn&& fn) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, count));
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i; (i = next.fetch_add(1)) < count;) {
        try {
          fn(i);
        } catch (...) {
          if (!failed.exchange(true)) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
}

// Moore-Penrose inverse of a symmetric positive semidefinite matrix.
Eigen::MatrixXd pseudo_inverse(const Eigen::MatrixXd& s) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(s);
  const auto& values = eig.eigenvalues();
  const double cutoff = values.maxCoeff() * 1e-12;
  Eigen::VectorXd inv = Eigen::VectorXd::Zero(values.size());
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    if (values[i] > cutoff) inv[i] = 1.0 / values[i];
  }
  return eig.eigenvectors() * inv.asDiagonal() * eig.eigenvectors().transpose();
}

}  // namespace

std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

MuculantSeq estimate_muculants_from_counts(Index offset, std::span<const std::uint64_t> counts,
                                           const FrequencyGrid& grid, Index n_max, double min_abs) {
  std::uint64_t m = 0;
  for (auto c : counts) m += c;
  if (m == 0) throw Error(ErrorCode::EmptySample, "no observations");
  if (m < kMinSampleSize) {
    throw Error(ErrorCode::PreconditionViolated,
                "need at least " + std::to_string(kMinSampleSize) + " samples, got " + std::to_string(m));
  }
  return estimate_checked(offset, counts, grid, n_max, min_abs);
}

MuculantSeq estimate_muculants(std::span<const std::int64_t> samples, const FrequencyGrid& grid, Index n_max) {
  if (samples.empty()) throw Error(ErrorCode::EmptySample, "no observations");
  const auto [lo, hi] = std::minmax_element(samples.begin(), samples.end());
  check_grid(*lo, *hi, grid);
  std::vector<std::uint64_t> counts(static_cast<std::size_t>(*hi - *lo + 1), 0);
  for (auto x : samples) ++counts[static_cast<std::size_t>(x - *lo)];
  return estimate_muculants_from_counts(*lo, counts, grid, n_max);
}

std::vector<Index> test_indices(IntRange window) {
  std::vector<Index> out;
  for (Index n = window.lo; n <= window.hi; ++n) {
    if (n != 0 && n != 1) out.push_back(n);
  }
  return out;
}

std::vector<double> window_coefficients(const MuculantSeq& m, IntRange window) {
  std::vector<double> v;
  for (Index n : test_indices(window)) v.push_back(m.at(n));
  return v;
}

double windowed_sum_of_squares(const MuculantSeq& m, IntRange window) {
  double t = 0.0;
  for (double c : window_coefficients(m, window)) t += c * c;
  return t;
}

PoissonTestResult poisson_test(std::span<const std::int64_t> samples, const PoissonTestOptions& options) {
  if (!(options.alpha > 0.0 && options.alpha < 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "alpha must lie in (0, 1)");
  }
  if (options.n_bootstrap == 0) throw Error(ErrorCode::InvalidArgument, "n_bootstrap must be positive");
  const auto indices = test_indices(options.window);
  if (indices.empty()) throw Error(ErrorCode::InvalidArgument, "window has no indices besides 0 and 1");
  if (samples.empty()) throw Error(ErrorCode::EmptySample, "no observations");
  for (auto x : samples) {
    if (x < 0) throw Error(ErrorCode::NegativeSampleValue, "sample value " + std::to_string(x) + " is negative");
  }

  const FrequencyGrid grid(options.grid_size);
  const Index n_max = window_extent(options.window);
  std::vector<std::uint64_t> observed_counts(static_cast<std::size_t>(*std::max_element(samples.begin(), samples.end()) + 1), 0);
  for (auto x : samples) ++observed_counts[static_cast<std::size_t>(x)];
  const auto observed = estimate_muculants_from_counts(0, observed_counts, grid, n_max, options.min_abs);

  const std::uint64_t m = samples.size();
  double total = 0.0;
  for (auto x : samples) total += static_cast<double>(x);
  const double lambda_hat = total / static_cast<double>(m);
  const auto probs = null_probabilities(lambda_hat);

  const std::size_t dim = indices.size();
  const std::size_t b = options.n_bootstrap;
  std::vector<std::optional<std::vector<double>>> replicates(b);
  parallel_for(b, options.threads, [&](std::size_t i) {
    std::mt19937_64 rng(splitmix64(options.seed ^ splitmix64(i)));
    const auto counts = multinomial_counts(m, probs, rng);
    try {
      replicates[i] = window_coefficients(estimate_checked(0, counts, grid, n_max, options.min_abs), options.window);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::CharFnVanishes) throw;
    }
  });

  std::vector<const std::vector<double>*> valid;
  for (const auto& r : replicates) {
    if (r) valid.push_back(&*r);
  }
  if (valid.empty()) throw Error(ErrorCode::CharFnVanishes, "every bootstrap replicate vanished");

  const auto v0 = window_coefficients(observed, options.window);
  std::function<double(const std::vector<double>&)> statistic;
  Eigen::MatrixXd precision;
  if (options.statistic == PoissonStatistic::whitened) {
    Eigen::MatrixXd x(static_cast<Eigen::Index>(valid.size()), static_cast<Eigen::Index>(dim));
    for (std::size_t r = 0; r < valid.size(); ++r) {
      for (std::size_t c = 0; c < dim; ++c) x(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = (*valid[r])[c];
    }
    const Eigen::MatrixXd centered = x.rowwise() - x.colwise().mean();
    const double denom = valid.size() > 1 ? static_cast<double>(valid.size() - 1) : 1.0;
    precision = pseudo_inverse(centered.transpose() * centered / denom);
    statistic = [&](const std::vector<double>& v) {
      const Eigen::Map<const Eigen::VectorXd> e(v.data(), static_cast<Eigen::Index>(v.size()));
      return std::max(0.0, e.dot(precision * e));
    };
  } else {
    statistic = [](const std::vector<double>& v) {
      double t = 0.0;
      for (double c : v) t += c * c;
      return t;
    };
  }

  std::vector<double> null_stats;
  null_stats.reserve(valid.size());
  for (const auto* r : valid) null_stats.push_back(statistic(*r));

  PoissonTestResult result;
  result.statistic = statistic(v0);
  result.lambda_hat = lambda_hat;
  result.window = options.window;
  result.n_bootstrap = b;
  result.n_bootstrap_failed = b - valid.size();
  result.seed = options.seed;
  result.alpha = options.alpha;
  result.statistic_kind = options.statistic;
  result.sample_size = samples.size();
  result.grid_size = grid.size();

  std::vector<double> sorted = null_stats;
  std::sort(sorted.begin(), sorted.end());
  const auto rank = static_cast<std::size_t>(std::ceil((1.0 - options.alpha) * static_cast<double>(sorted.size()) - 1e-9));
  result.threshold = sorted[std::clamp<std::size_t>(rank, 1, sorted.size()) - 1];
  const auto exceed = std::count_if(null_stats.begin(), null_stats.end(), [&](double t) { return t >= result.statistic; });
  result.p_value = static_cast<double>(exceed) / static_cast<double>(null_stats.size());
  result.reject = result.statistic > result.threshold;
  return result;
}

}  // namespace muculant
