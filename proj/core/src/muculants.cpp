#include "muculant/muculants.hpp"

#include <algorithm>
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

void check_order(Index n_max, const FrequencyGrid& grid) {
  if (n_max < 0) throw Error(ErrorCode::InvalidArgument, "n_max must be nonnegative");
  if (4 * static_cast<std::size_t>(n_max) > grid.size()) {
    throw Error(ErrorCode::GridTooCoarse, "n_max = " + std::to_string(n_max) + " exceeds N/4 for N = " +
                                              std::to_string(grid.size()));
  }
}

// c[n] = (1/N) sum_k x_k e^{-j mu_k n} for n in [-n_max, n_max]; x is consumed.
std::vector<cplx> analyze(std::vector<cplx> x, Index n_max) {
  const std::size_t n = x.size();
  detail::fft(x, detail::FftSign::forward);
  std::vector<cplx> out(static_cast<std::size_t>(2 * n_max + 1));
  const double scale = 1.0 / static_cast<double>(n);
  for (Index k = -n_max; k <= n_max; ++k) {
    out[static_cast<std::size_t>(k + n_max)] = alternating(k) * scale * x[wrap(k, n)];
  }
  return out;
}

std::vector<double> mirrored_log_magnitude(const CharFnSamples& cf) {
  const double min_abs = cf.min_abs();
  if (!(min_abs >= kVanishingThreshold)) {
    throw Error(ErrorCode::CharFnVanishes, "min |Phi| = " + short_number(min_abs));
  }
  const std::size_t n = cf.grid.size();
  const std::size_t h = cf.grid.zero_index();
  std::vector<double> lm(n);
  for (std::size_t i = 0; i < h; ++i) {
    lm[h + i] = std::log(std::abs(cf.values[h + i]));
    if (i > 0) lm[h - i] = lm[h + i];
  }
  lm[0] = std::log(std::abs(cf.values[0]));
  return lm;
}

}  // namespace

double MuculantSeq::at(Index n) const noexcept {
  if (n < n_min || n > n_max) return 0.0;
  return values[static_cast<std::size_t>(n - n_min)];
}

double MuculantSeq::sum() const noexcept {
  double s = 0.0;
  for (double v : values) s += v;
  return s;
}

double linear_phase_coefficient(std::int64_t m, Index n) noexcept {
  if (n == 0 || m == 0) return 0.0;
  return static_cast<double>(m) * alternating(n + 1) / static_cast<double>(n);
}

MuculantSeq complex_muculants(const LogCharFnSamples& logcf, Index n_max) {
  const FrequencyGrid& grid = logcf.grid;
  check_order(n_max, grid);

  // Remove the winding before the DFT: phase - M mu is continuous and
  // periodic, and the exact coefficients of j M mu are added back below.
  const std::int64_t winding = logcf.winding();
  const std::size_t n = grid.size();
  std::vector<cplx> x(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double smooth_phase = logcf.phase[k] - static_cast<double>(winding) * grid.point(k);
    x[k] = {logcf.log_magnitude[k], smooth_phase};
  }
  const auto c = analyze(std::move(x), n_max);

  double residual = 0.0;
  for (const auto& v : c) residual = std::max(residual, std::abs(v.imag()));
  if (!(residual < kImagResidualLimit)) {
    throw Error(ErrorCode::ImagResidualTooLarge, "imaginary residual " + std::to_string(residual));
  }

  auto seq = make_muculants({-n_max, n_max}, MuculantKind::complex, winding, [&](Index k) {
    return c[static_cast<std::size_t>(k + n_max)].real() + linear_phase_coefficient(winding, k);
  });
  seq.imag_residual = residual;
  return seq;
}

MuculantSeq complex_muculants(const Pmf& f, Index n_max, const FrequencyGrid& grid) {
  return complex_muculants(complex_log(eval_charfn(f, grid)), n_max);
}

MuculantSeq power_muculants(const CharFnSamples& cf, Index n_max) {
  check_order(n_max, cf.grid);
  const auto lm = mirrored_log_magnitude(cf);
  std::vector<cplx> x(lm.size());
  for (std::size_t k = 0; k < lm.size(); ++k) x[k] = {2.0 * lm[k], 0.0};
  const auto c = analyze(std::move(x), n_max);

  double residual = 0.0;
  for (const auto& v : c) residual = std::max(residual, std::abs(v.imag()));
  if (!(residual < kImagResidualLimit)) {
    throw Error(ErrorCode::ImagResidualTooLarge, "imaginary residual " + std::to_string(residual));
  }
  // Even by construction of the mirrored magnitude; symmetrize the last bits.
  auto seq = make_muculants({-n_max, n_max}, MuculantKind::power, 0, [&](Index k) {
    return 0.5 * (c[static_cast<std::size_t>(k + n_max)].real() +
                  c[static_cast<std::size_t>(-k + n_max)].real());
  });
  seq.imag_residual = residual;
  return seq;
}

MuculantSeq recursive_minphase_muculants(const Pmf& f, Index n_max) {
  if (n_max < 0) throw Error(ErrorCode::InvalidArgument, "n_max must be nonnegative");
  if (f.offset() != 0) {
    throw Error(ErrorCode::NotApplicable, "support must start at 0, starts at " + std::to_string(f.offset()));
  }
  const double f0 = f.at(0);
  if (!(f0 > 1e-14)) throw Error(ErrorCode::NotApplicable, "f[0] is (numerically) zero");
  if (!is_minimum_phase(f)) throw Error(ErrorCode::NotApplicable, "PMF is not minimum-phase");

  std::vector<double> c(static_cast<std::size_t>(n_max + 1), 0.0);
  c[0] = std::log(f0);
  for (Index n = 1; n <= n_max; ++n) {
    double v = f.at(n) / f0;
    for (Index k = 1; k < n; ++k) {
      v -= (static_cast<double>(k) / static_cast<double>(n)) * c[static_cast<std::size_t>(k)] * f.at(n - k) / f0;
    }
    c[static_cast<std::size_t>(n)] = v;
  }
  MuculantSeq seq;
  seq.n_min = 0;
  seq.n_max = n_max;
  seq.values = std::move(c);
  seq.kind = MuculantKind::complex;
  return seq;
}

CharFnSamples reconstruct_charfn(const MuculantSeq& m, const FrequencyGrid& grid) {
  if (m.kind != MuculantKind::complex) {
    throw Error(ErrorCode::PreconditionViolated, "reconstruction needs complex muculants");
  }
  const std::size_t n = grid.size();
  std::vector<cplx> buf(n, cplx{0.0, 0.0});
  for (Index k = m.n_min; k <= m.n_max; ++k) {
    const double smooth = m.at(k) - linear_phase_coefficient(m.linear_phase, k);
    buf[wrap(k, n)] += alternating(k) * smooth;
  }
  detail::fft(buf, detail::FftSign::backward);
  for (std::size_t k = 0; k < n; ++k) {
    const double phase = buf[k].imag() + static_cast<double>(m.linear_phase) * grid.point(k);
    buf[k] = std::polar(std::exp(buf[k].real()), phase);
  }
  return {grid, std::move(buf), CharFnSource::reconstructed};
}

SignedSequence reconstruct_sequence(const MuculantSeq& m, IntRange support) {
  if (support.size() <= 0) throw Error(ErrorCode::InvalidArgument, "empty support");
  const FrequencyGrid grid = FrequencyGrid::at_least(4 * static_cast<std::size_t>(support.size()));
  auto x = reconstruct_charfn(m, grid).values;
  detail::fft(x, detail::FftSign::forward);

  const std::size_t n = grid.size();
  const double scale = 1.0 / static_cast<double>(n);
  const Index start = support.lo - (static_cast<Index>(n) - support.size()) / 2;

  SignedSequence out;
  out.offset = support.lo;
  out.values.assign(static_cast<std::size_t>(support.size()), 0.0);
  double discarded = 0.0;
  for (Index xi = start; xi < start + static_cast<Index>(n); ++xi) {
    const double v = alternating(xi) * scale * x[wrap(xi, n)].real();
    if (support.contains(xi)) {
      out.values[static_cast<std::size_t>(xi - support.lo)] = v;
    } else {
      discarded += std::abs(v);
    }
  }
  if (discarded > 1e-6) {
    throw Error(ErrorCode::SupportTooSmall, "mass " + std::to_string(discarded) + " outside [" +
                                                std::to_string(support.lo) + ", " +
                                                std::to_string(support.hi) + "]");
  }
  for (double v : out.values) out.sum += v;
  return out;
}

CumulantVector cumulants_from_muculants(const MuculantSeq& m, int k_max) {
  if (m.kind != MuculantKind::complex) {
    throw Error(ErrorCode::PreconditionViolated, "cumulants need complex muculants");
  }
  if (k_max < 1) throw Error(ErrorCode::InvalidArgument, "k_max must be positive");

  const Index extent = std::max(-m.n_min, m.n_max);
  if (extent > 0) {
    const Index tail_count = std::max<Index>(1, (extent + 9) / 10);
    double tail = 0.0;
    for (Index n = m.n_min; n <= m.n_max; ++n) {
      if (std::abs(n) > extent - tail_count) tail = std::max(tail, std::abs(m.at(n)));
    }
    for (int k = 1; k <= k_max; ++k) {
      const double growth = std::pow(static_cast<double>(extent), k) * tail;
      if (growth > 1e-6) {
        throw Error(ErrorCode::TruncationUnsafe,
                    "n_max^" + std::to_string(k) + " * tail = " + std::to_string(growth));
      }
    }
  }

  std::vector<double> kappa(static_cast<std::size_t>(k_max), 0.0);
  for (int k = 1; k <= k_max; ++k) {
    double s = 0.0;
    for (Index n = m.n_min; n <= m.n_max; ++n) s += std::pow(static_cast<double>(n), k) * m.at(n);
    kappa[static_cast<std::size_t>(k - 1)] = s;
  }
  return {std::move(kappa)};
}

namespace {

MuculantSeq combine(const MuculantSeq& a, const MuculantSeq& b, double sign) {
  if (a.kind != b.kind) throw Error(ErrorCode::InvalidArgument, "muculant kinds differ");
  const IntRange r{std::min(a.n_min, b.n_min), std::max(a.n_max, b.n_max)};
  const auto lp = a.linear_phase + static_cast<std::int64_t>(sign) * b.linear_phase;
  auto s = make_muculants(r, a.kind, lp, [&](Index n) { return a.at(n) + sign * b.at(n); });
  s.imag_residual = std::max(a.imag_residual, b.imag_residual);
  return s;
}

}  // namespace

MuculantSeq add(const MuculantSeq& a, const MuculantSeq& b) { return combine(a, b, 1.0); }
MuculantSeq subtract(const MuculantSeq& a, const MuculantSeq& b) { return combine(a, b, -1.0); }

}  // namespace muculant
