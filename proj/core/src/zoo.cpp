#include "muculant/zoo.hpp"

#include <charconv>
#include <functional>
#include <cmath>
#include <map>
#include <numbers>
#include <sstream>

#include "muculant/error.hpp"

namespace muculant {

namespace {

using cplx = std::complex<double>;

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

constexpr std::size_t kMaxTruncatedLength = 50'000'000;

void require(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorCode::InvalidArgument, what);
}

bool open_unit(double p) { return p > 0.0 && p < 1.0; }

double alternating(Index n) { return (n % 2 == 0) ? 1.0 : -1.0; }

// Sums P(xi) = exp(log_mass(xi)) from xi = 0 until kTruncationMass is reached.
template <typename LogMass>
Pmf truncated(LogMass&& log_mass) {
  std::vector<double> probs;
  double cumulative = 0.0;
  for (Index xi = 0; cumulative < kTruncationMass; ++xi) {
    if (probs.size() >= kMaxTruncatedLength) {
      throw Error(ErrorCode::InvalidArgument, "distribution too wide to truncate");
    }
    const double v = std::exp(log_mass(xi));
    probs.push_back(v);
    cumulative += v;
  }
  return validate_pmf(0, std::move(probs));
}

double log_choose(double n, double k) {
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

// Bernoulli(p) muculants at n, with linear phase 1 when p > 1/2.
double bernoulli_coefficient(double p, Index n) {
  if (p < 0.5) {
    const double rho = p / (1.0 - p);
    if (n == 0) return std::log1p(-p);
    if (n < 0) return 0.0;
    return alternating(n + 1) * std::pow(rho, static_cast<double>(n)) / static_cast<double>(n);
  }
  const double rho = (1.0 - p) / p;
  if (n == 0) return std::log(p);
  const double base = alternating(n + 1) / static_cast<double>(n);
  if (n > 0) return base;
  return base * (1.0 - std::pow(rho, static_cast<double>(-n)));
}

// Polynomial in one variable, coefficients by ascending power.
using Poly = std::vector<double>;

// kappa_1 = x, kappa_{k+1} = (x + s x^2) d kappa_k / dx.
std::vector<Poly> derivative_recursion(double s, int k_max) {
  std::vector<Poly> out{{0.0, 1.0}};
  while (static_cast<int>(out.size()) < k_max) {
    const Poly& k = out.back();
    Poly d(k.size() > 1 ? k.size() - 1 : 1, 0.0);
    for (std::size_t i = 1; i < k.size(); ++i) d[i - 1] = static_cast<double>(i) * k[i];
    Poly next(d.size() + 2, 0.0);
    for (std::size_t i = 0; i < d.size(); ++i) {
      next[i + 1] += d[i];
      next[i + 2] += s * d[i];
    }
    out.push_back(std::move(next));
  }
  return out;
}

double evaluate(const Poly& poly, double x) {
  double v = 0.0;
  for (auto it = poly.rbegin(); it != poly.rend(); ++it) v = v * x + *it;
  return v;
}

CumulantVector recursion_cumulants(double scale, double s, double x, int k_max) {
  const auto polys = derivative_recursion(s, k_max);
  std::vector<double> values;
  values.reserve(polys.size());
  for (const auto& poly : polys) values.push_back(scale * evaluate(poly, x));
  return {std::move(values)};
}

double parse_real(std::string_view s) {
  double v = 0.0;
  const auto* end = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc{} || ptr != end) {
    throw Error(ErrorCode::ParseError, "not a number: '" + std::string(s) + "'");
  }
  return v;
}

std::int64_t parse_integer(std::string_view s) {
  std::int64_t v = 0;
  const auto* end = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc{} || ptr != end) {
    throw Error(ErrorCode::ParseError, "not an integer: '" + std::string(s) + "'");
  }
  return v;
}

std::string format_real(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

void validate(const DistributionSpec& spec) {
  std::visit(overloaded{
                 [](const Poisson& d) { require(d.lambda > 0.0 && std::isfinite(d.lambda), "poisson: lambda must be > 0"); },
                 [](const Degenerate&) {},
                 [](const Bernoulli& d) {
                   require(open_unit(d.p), "bernoulli: p must lie in (0, 1)");
                   require(d.p != 0.5, "bernoulli: p = 0.5 has no muculants");
                 },
                 [](const Geometric& d) { require(open_unit(d.p), "geometric: p must lie in (0, 1)"); },
                 [](const NegativeBinomial& d) {
                   require(d.r >= 1, "negbinomial: r must be a positive integer");
                   require(open_unit(d.p), "negbinomial: p must lie in (0, 1)");
                 },
                 [](const Binomial& d) {
                   require(d.n >= 1, "binomial: n must be a positive integer");
                   require(open_unit(d.p), "binomial: p must lie in (0, 1)");
                   require(d.p != 0.5, "binomial: p = 0.5 has no muculants");
                 },
             },
             spec);
}

DistributionSpec parse_distribution(std::string_view text) {
  const auto colon = text.find(':');
  const std::string family(text.substr(0, colon));
  std::map<std::string, std::string, std::less<>> params;
  if (colon != std::string_view::npos) {
    std::string_view rest = text.substr(colon + 1);
    while (!rest.empty()) {
      const auto comma = rest.find(',');
      const std::string_view item = rest.substr(0, comma);
      const auto eq = item.find('=');
      if (eq == std::string_view::npos || eq == 0) {
        throw Error(ErrorCode::ParseError, "expected key=value, got '" + std::string(item) + "'");
      }
      if (!params.emplace(std::string(item.substr(0, eq)), std::string(item.substr(eq + 1))).second) {
        throw Error(ErrorCode::ParseError, "duplicate parameter in '" + std::string(text) + "'");
      }
      if (comma == std::string_view::npos) break;
      rest = rest.substr(comma + 1);
    }
  }

  auto take = [&](std::string_view key) {
    const auto it = params.find(key);
    if (it == params.end()) {
      throw Error(ErrorCode::ParseError, family + ": missing parameter '" + std::string(key) + "'");
    }
    std::string v = it->second;
    params.erase(it);
    return v;
  };

  DistributionSpec spec;
  if (family == "poisson") {
    spec = Poisson{parse_real(take("lambda"))};
  } else if (family == "degenerate") {
    spec = Degenerate{parse_integer(take("m"))};
  } else if (family == "bernoulli") {
    spec = Bernoulli{parse_real(take("p"))};
  } else if (family == "geometric") {
    spec = Geometric{parse_real(take("p"))};
  } else if (family == "negbinomial") {
    const auto r = parse_integer(take("r"));
    spec = NegativeBinomial{r, parse_real(take("p"))};
  } else if (family == "binomial") {
    const auto n = parse_integer(take("n"));
    spec = Binomial{n, parse_real(take("p"))};
  } else {
    throw Error(ErrorCode::ParseError, "unknown distribution family '" + family + "'");
  }
  if (!params.empty()) {
    throw Error(ErrorCode::ParseError, family + ": unknown parameter '" + params.begin()->first + "'");
  }
  validate(spec);
  return spec;
}

std::string to_string(const DistributionSpec& spec) {
  return std::visit(
      overloaded{
          [](const Poisson& d) { return "poisson:lambda=" + format_real(d.lambda); },
          [](const Degenerate& d) { return "degenerate:m=" + std::to_string(d.m); },
          [](const Bernoulli& d) { return "bernoulli:p=" + format_real(d.p); },
          [](const Geometric& d) { return "geometric:p=" + format_real(d.p); },
          [](const NegativeBinomial& d) {
            return "negbinomial:r=" + std::to_string(d.r) + ",p=" + format_real(d.p);
          },
          [](const Binomial& d) { return "binomial:n=" + std::to_string(d.n) + ",p=" + format_real(d.p); },
      },
      spec);
}

Pmf zoo_pmf(const DistributionSpec& spec) {
  validate(spec);
  return std::visit(
      overloaded{
          [](const Poisson& d) {
            const double ll = std::log(d.lambda);
            return truncated([&](Index xi) {
              const auto x = static_cast<double>(xi);
              return -d.lambda + x * ll - std::lgamma(x + 1.0);
            });
          },
          [](const Degenerate& d) { return validate_pmf(d.m, {1.0}); },
          [](const Bernoulli& d) { return validate_pmf(0, {1.0 - d.p, d.p}); },
          [](const Geometric& d) {
            const double lp = std::log(d.p);
            const double lq = std::log1p(-d.p);
            return truncated([&](Index xi) { return lp + static_cast<double>(xi) * lq; });
          },
          [](const NegativeBinomial& d) {
            const auto r = static_cast<double>(d.r);
            const double lq = std::log1p(-d.p);
            const double lp = std::log(d.p);
            return truncated([&](Index xi) {
              const auto x = static_cast<double>(xi);
              return log_choose(x + r - 1.0, x) + r * lq + x * lp;
            });
          },
          [](const Binomial& d) {
            const auto n = static_cast<double>(d.n);
            std::vector<double> probs(static_cast<std::size_t>(d.n + 1));
            for (std::size_t i = 0; i < probs.size(); ++i) {
              const auto x = static_cast<double>(i);
              probs[i] = std::exp(log_choose(n, x) + x * std::log(d.p) + (n - x) * std::log1p(-d.p));
            }
            return validate_pmf(0, std::move(probs));
          },
      },
      spec);
}

CharFnSamples zoo_charfn(const DistributionSpec& spec, const FrequencyGrid& grid) {
  validate(spec);
  const auto phi = std::visit(
      overloaded{
          [](const Poisson& d) -> std::function<cplx(double)> {
            return [d](double mu) { return std::exp(d.lambda * (std::polar(1.0, mu) - 1.0)); };
          },
          [](const Degenerate& d) -> std::function<cplx(double)> {
            return [d](double mu) { return std::polar(1.0, mu * static_cast<double>(d.m)); };
          },
          [](const Bernoulli& d) -> std::function<cplx(double)> {
            return [d](double mu) { return (1.0 - d.p) + d.p * std::polar(1.0, mu); };
          },
          [](const Geometric& d) -> std::function<cplx(double)> {
            return [d](double mu) { return d.p / (1.0 - (1.0 - d.p) * std::polar(1.0, mu)); };
          },
          [](const NegativeBinomial& d) -> std::function<cplx(double)> {
            return [d](double mu) {
              return std::pow((1.0 - d.p) / (1.0 - d.p * std::polar(1.0, mu)), static_cast<double>(d.r));
            };
          },
          [](const Binomial& d) -> std::function<cplx(double)> {
            return [d](double mu) {
              return std::pow((1.0 - d.p) + d.p * std::polar(1.0, mu), static_cast<double>(d.n));
            };
          },
      },
      spec);
  std::vector<cplx> values(grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k) values[k] = phi(grid.point(k));
  return {grid, std::move(values), CharFnSource::exact_from_pmf};
}

MuculantSeq zoo_muculants(const DistributionSpec& spec, IntRange range) {
  validate(spec);
  return std::visit(
      overloaded{
          [&](const Poisson& d) {
            return make_muculants(range, MuculantKind::complex, 0, [&](Index n) {
              return n == 0 ? -d.lambda : (n == 1 ? d.lambda : 0.0);
            });
          },
          [&](const Degenerate& d) {
            return make_muculants(range, MuculantKind::complex, d.m,
                                  [&](Index n) { return linear_phase_coefficient(d.m, n); });
          },
          [&](const Bernoulli& d) {
            return make_muculants(range, MuculantKind::complex, d.p > 0.5 ? 1 : 0,
                                  [&](Index n) { return bernoulli_coefficient(d.p, n); });
          },
          [&](const Geometric& d) {
            return make_muculants(range, MuculantKind::complex, 0, [&](Index n) {
              if (n < 0) return 0.0;
              if (n == 0) return std::log(d.p);
              return std::pow(1.0 - d.p, static_cast<double>(n)) / static_cast<double>(n);
            });
          },
          [&](const NegativeBinomial& d) {
            const auto r = static_cast<double>(d.r);
            return make_muculants(range, MuculantKind::complex, 0, [&](Index n) {
              if (n < 0) return 0.0;
              if (n == 0) return r * std::log1p(-d.p);
              return r * std::pow(d.p, static_cast<double>(n)) / static_cast<double>(n);
            });
          },
          [&](const Binomial& d) {
            const auto count = static_cast<double>(d.n);
            return make_muculants(range, MuculantKind::complex, d.p > 0.5 ? d.n : 0,
                                  [&](Index n) { return count * bernoulli_coefficient(d.p, n); });
          },
      },
      spec);
}

CumulantVector zoo_cumulants(const DistributionSpec& spec, int k_max) {
  validate(spec);
  require(k_max >= 1 && k_max <= 8, "k_max must lie in [1, 8]");
  return std::visit(
      overloaded{
          [&](const Poisson& d) {
            return CumulantVector{std::vector<double>(static_cast<std::size_t>(k_max), d.lambda)};
          },
          [&](const Degenerate& d) {
            std::vector<double> v(static_cast<std::size_t>(k_max), 0.0);
            v[0] = static_cast<double>(d.m);
            return CumulantVector{std::move(v)};
          },
          // (p - p^2) d/dp and (rho + rho^2) d/drho.
          [&](const Bernoulli& d) { return recursion_cumulants(1.0, -1.0, d.p, k_max); },
          [&](const Geometric& d) { return recursion_cumulants(1.0, 1.0, (1.0 - d.p) / d.p, k_max); },
          [&](const NegativeBinomial& d) {
            return recursion_cumulants(static_cast<double>(d.r), 1.0, d.p / (1.0 - d.p), k_max);
          },
          [&](const Binomial& d) { return recursion_cumulants(static_cast<double>(d.n), -1.0, d.p, k_max); },
      },
      spec);
}

}  // namespace muculant
