#include "muculant/pmf.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include <Eigen/Dense>

#include "muculant/error.hpp"

namespace muculant {

namespace {

constexpr double kClampThreshold = -1e-14;
constexpr double kNormalizationTolerance = 1e-6;
constexpr double kMinPhaseMargin = 1e-10;

double binomial_coefficient(int n, int k) {
  double c = 1.0;
  for (int i = 1; i <= k; ++i) c = c * (n - k + i) / i;
  return c;
}

}  // namespace

double Pmf::total_mass() const noexcept {
  return std::accumulate(probs_.begin(), probs_.end(), 0.0);
}

double Pmf::at(Index xi) const noexcept {
  if (xi < offset_ || xi > last_index()) return 0.0;
  return probs_[static_cast<std::size_t>(xi - offset_)];
}

double SignedSequence::at(Index xi) const noexcept {
  if (xi < offset || xi > last_index()) return 0.0;
  return values[static_cast<std::size_t>(xi - offset)];
}

Pmf validate_pmf(Index offset, std::vector<double> values) {
  if (values.empty()) throw Error(ErrorCode::InvalidArgument, "empty probability vector");

  double sum = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    double& v = values[i];
    if (!std::isfinite(v)) throw Error(ErrorCode::InvalidArgument, "non-finite probability");
    if (v < kClampThreshold) {
      throw Error(ErrorCode::NegativeMass,
                  "entry at xi=" + std::to_string(offset + static_cast<Index>(i)) + " is " +
                      std::to_string(v));
    }
    if (v < 0.0) v = 0.0;
    sum += v;
  }
  if (std::abs(sum - 1.0) > kNormalizationTolerance) {
    throw Error(ErrorCode::NotNormalized, "probabilities sum to " + std::to_string(sum));
  }

  auto first = std::find_if(values.begin(), values.end(), [](double v) { return v > 0.0; });
  auto last = std::find_if(values.rbegin(), values.rend(), [](double v) { return v > 0.0; }).base();
  const Index new_offset = offset + (first - values.begin());
  std::vector<double> trimmed(first, last);

  double tail = 0.0;
  if (sum > 1.0) {
    for (double& v : trimmed) v /= sum;
  } else {
    tail = 1.0 - sum;
  }
  return Pmf(new_offset, std::move(trimmed), tail);
}

Pmf convolve(const Pmf& f, const Pmf& g) {
  const auto a = f.probs();
  const auto b = g.probs();
  std::vector<double> out(a.size() + b.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  return validate_pmf(f.offset() + g.offset(), std::move(out));
}

Pmf reflect(const Pmf& f) {
  std::vector<double> values(f.probs().rbegin(), f.probs().rend());
  return validate_pmf(-f.last_index(), std::move(values));
}

Pmf shift(const Pmf& f, Index by) {
  return validate_pmf(f.offset() + by, {f.probs().begin(), f.probs().end()});
}

Pmf autocorrelation(const Pmf& f) {
  // Symmetrize explicitly: floating-point convolution of f with its mirror
  // is only symmetric up to rounding.
  Pmf r = convolve(f, reflect(f));
  std::vector<double> v(r.probs().begin(), r.probs().end());
  const std::size_t n = v.size();
  for (std::size_t i = 0; i < n / 2; ++i) {
    const double mean = 0.5 * (v[i] + v[n - 1 - i]);
    v[i] = mean;
    v[n - 1 - i] = mean;
  }
  return validate_pmf(r.offset(), std::move(v));
}

double raw_moment(const Pmf& f, int k) {
  if (k < 1) throw Error(ErrorCode::InvalidArgument, "moment order must be positive");
  double m = 0.0;
  const auto p = f.probs();
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double xi = static_cast<double>(f.offset() + static_cast<Index>(i));
    m += std::pow(xi, k) * p[i];
  }
  return m;
}

std::vector<double> raw_moments(const Pmf& f, int k_max) {
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(std::max(k_max, 0)));
  for (int k = 1; k <= k_max; ++k) out.push_back(raw_moment(f, k));
  return out;
}

CumulantVector moments_to_cumulants(std::span<const double> moments) {
  if (moments.empty()) throw Error(ErrorCode::InvalidArgument, "need at least one moment");
  const int order = static_cast<int>(moments.size());
  std::vector<double> kappa(moments.size());
  for (int k = 1; k <= order; ++k) {
    double value = moments[static_cast<std::size_t>(k - 1)];
    for (int i = 1; i < k; ++i) {
      value -= binomial_coefficient(k - 1, i - 1) * kappa[static_cast<std::size_t>(i - 1)] *
               moments[static_cast<std::size_t>(k - i - 1)];
    }
    kappa[static_cast<std::size_t>(k - 1)] = value;
  }
  return {std::move(kappa)};
}

std::vector<std::complex<double>> transfer_zeros(const Pmf& f) {
  // Coefficients of w^d, ..., w^0 with d = size - 1: f[offset], ..., f[L].
  const auto p = f.probs();
  const std::size_t degree = p.size() - 1;
  if (degree == 0) return {};

  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(degree),
                                                    static_cast<Eigen::Index>(degree));
  const double lead = p[0];
  for (std::size_t i = 0; i < degree; ++i) {
    companion(0, static_cast<Eigen::Index>(i)) = -p[i + 1] / lead;
    if (i + 1 < degree) companion(static_cast<Eigen::Index>(i + 1), static_cast<Eigen::Index>(i)) = 1.0;
  }
  Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, /*computeEigenvectors=*/false);
  const auto& ev = solver.eigenvalues();
  std::vector<std::complex<double>> roots(static_cast<std::size_t>(ev.size()));
  for (Eigen::Index i = 0; i < ev.size(); ++i) roots[static_cast<std::size_t>(i)] = ev(i);
  return roots;
}

bool is_minimum_phase(const Pmf& f) {
  if (f.offset() < 0) throw Error(ErrorCode::NotCausal, "support starts at " + std::to_string(f.offset()));
  const auto zeros = transfer_zeros(f);
  return std::all_of(zeros.begin(), zeros.end(),
                     [](const std::complex<double>& z) { return std::abs(z) < 1.0 - kMinPhaseMargin; });
}

}  // namespace muculant
