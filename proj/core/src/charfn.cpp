#include "muculant/charfn.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <string>

#include "fft.hpp"
#include "muculant/error.hpp"

namespace muculant {

namespace {

using cplx = std::complex<double>;

std::size_t wrap(Index n, std::size_t size) {
  const auto m = static_cast<Index>(size);
  Index r = n % m;
  if (r < 0) r += m;
  return static_cast<std::size_t>(r);
}

double alternating(Index n) { return (n % 2 == 0) ? 1.0 : -1.0; }

// Phi(mu_k) = sum_n a[n] e^{j mu_k n} = sum_n a[n] (-1)^n e^{2 pi j k n / N}.
// Folding n modulo N is exact on this grid because N is even.
std::vector<cplx> synthesize(Index offset, std::span<const double> a, std::size_t n) {
  std::vector<cplx> buf(n, cplx{0.0, 0.0});
  for (std::size_t i = 0; i < a.size(); ++i) {
    const Index idx = offset + static_cast<Index>(i);
    buf[wrap(idx, n)] += alternating(idx) * a[i];
  }
  detail::fft(buf, detail::FftSign::backward);
  return buf;
}

std::size_t extent_of(const Pmf& f) {
  const Index width = static_cast<Index>(f.size());
  const Index reach = std::max(std::abs(f.offset()), std::abs(f.last_index())) + 1;
  return static_cast<std::size_t>(std::max(width, reach));
}

}  // namespace

FrequencyGrid::FrequencyGrid(std::size_t n_points) : n_(n_points) {
  if (n_points < kMinSize || !std::has_single_bit(n_points)) {
    throw Error(ErrorCode::InvalidArgument,
                "grid size must be a power of two >= 64, got " + std::to_string(n_points));
  }
}

FrequencyGrid FrequencyGrid::at_least(std::size_t n) {
  return FrequencyGrid(std::bit_ceil(std::max(n, kMinSize)));
}

double FrequencyGrid::spacing() const noexcept {
  return 2.0 * std::numbers::pi / static_cast<double>(n_);
}

double FrequencyGrid::point(std::size_t k) const noexcept {
  return -std::numbers::pi + spacing() * static_cast<double>(k);
}

std::vector<double> FrequencyGrid::points() const {
  std::vector<double> p(n_);
  for (std::size_t k = 0; k < n_; ++k) p[k] = point(k);
  return p;
}

double CharFnSamples::min_abs() const noexcept {
  double m = INFINITY;
  for (const auto& v : values) m = std::min(m, std::abs(v));
  return m;
}

std::int64_t LogCharFnSamples::winding() const noexcept {
  return static_cast<std::int64_t>(std::llround(-phase.front() / std::numbers::pi));
}

FrequencyGrid grid_for(const Pmf& f, bool at_least_default) {
  std::size_t n = 4 * extent_of(f);
  if (at_least_default) n = std::max(n, FrequencyGrid::kDefaultSize);
  return FrequencyGrid::at_least(n);
}

CharFnSamples eval_charfn(const Pmf& f, const FrequencyGrid& grid) {
  const std::size_t needed = 4 * extent_of(f);
  if (grid.size() < needed) {
    throw Error(ErrorCode::GridTooCoarse, "grid of " + std::to_string(grid.size()) +
                                              " points, need at least " + std::to_string(needed));
  }
  return {grid, synthesize(f.offset(), f.probs(), grid.size()), CharFnSource::exact_from_pmf};
}

CharFnSamples empirical_charfn_from_counts(Index offset, std::span<const std::uint64_t> counts,
                                           const FrequencyGrid& grid) {
  std::uint64_t total = 0;
  for (auto c : counts) total += c;
  if (total == 0) throw Error(ErrorCode::EmptySample, "no observations");

  std::vector<double> freq(counts.size());
  const double inv = 1.0 / static_cast<double>(total);
  for (std::size_t i = 0; i < counts.size(); ++i) freq[i] = static_cast<double>(counts[i]) * inv;
  return {grid, synthesize(offset, freq, grid.size()), CharFnSource::empirical};
}

CharFnSamples empirical_charfn(std::span<const std::int64_t> samples, const FrequencyGrid& grid) {
  if (samples.empty()) throw Error(ErrorCode::EmptySample, "no observations");
  const auto [lo, hi] = std::minmax_element(samples.begin(), samples.end());
  std::vector<std::uint64_t> counts(static_cast<std::size_t>(*hi - *lo + 1), 0);
  for (auto x : samples) ++counts[static_cast<std::size_t>(x - *lo)];
  return empirical_charfn_from_counts(*lo, counts, grid);
}

std::vector<double> unwrap_phase(std::span<const double> principal) {
  std::vector<double> out(principal.begin(), principal.end());
  constexpr double two_pi = 2.0 * std::numbers::pi;
  for (std::size_t i = 1; i < out.size(); ++i) {
    double d = principal[i] - principal[i - 1];
    d -= two_pi * std::round(d / two_pi);
    out[i] = out[i - 1] + d;
  }
  return out;
}

LogCharFnSamples complex_log(const CharFnSamples& samples) {
  const std::size_t n = samples.grid.size();
  const std::size_t h = samples.grid.zero_index();
  const auto& v = samples.values;

  const double min_abs = samples.min_abs();
  if (!(min_abs >= kVanishingThreshold)) {
    throw Error(ErrorCode::CharFnVanishes,
                "min |Phi| = " + short_number(min_abs) + " below " + short_number(kVanishingThreshold));
  }

  // Half grid mu in [0, pi]: k = h..n-1, then mu = pi from conj(Phi(-pi)).
  std::vector<cplx> half(h + 1);
  for (std::size_t i = 0; i < h; ++i) half[i] = v[h + i];
  half[h] = std::conj(v[0]);

  std::vector<double> arg(h + 1);
  for (std::size_t i = 0; i <= h; ++i) arg[i] = std::arg(half[i]);
  std::vector<double> unwrapped = unwrap_phase(arg);
  const double pin = unwrapped[0];
  for (double& p : unwrapped) p -= pin;

  LogCharFnSamples out{samples.grid, std::vector<double>(n), std::vector<double>(n), min_abs};
  for (std::size_t i = 0; i < h; ++i) {
    const double lm = std::log(std::abs(half[i]));
    out.log_magnitude[h + i] = lm;
    out.phase[h + i] = unwrapped[i];
    if (i > 0) {
      out.log_magnitude[h - i] = lm;
      out.phase[h - i] = -unwrapped[i];
    }
  }
  out.log_magnitude[0] = std::log(std::abs(half[h]));
  out.phase[0] = -unwrapped[h];
  return out;
}

}  // namespace muculant
