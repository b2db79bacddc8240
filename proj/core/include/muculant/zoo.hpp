#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <variant>

#include "muculant/charfn.hpp"
#include "muculant/muculants.hpp"
#include "muculant/pmf.hpp"

namespace muculant {

struct Poisson {
  double lambda = 1.0;
};
struct Degenerate {
  std::int64_t m = 0;
};
struct Bernoulli {
  double p = 0.25;
};
/// P(xi) = p (1 - p)^xi, xi >= 0.
struct Geometric {
  double p = 0.5;
};
/// P(xi) = C(xi + r - 1, xi) (1 - p)^r p^xi, xi >= 0.
struct NegativeBinomial {
  std::int64_t r = 1;
  double p = 0.5;
};
struct Binomial {
  std::int64_t n = 1;
  double p = 0.25;
};

using DistributionSpec = std::variant<Poisson, Degenerate, Bernoulli, Geometric, NegativeBinomial, Binomial>;

/// Raises InvalidArgument for parameters outside the family's range.
/// Bernoulli and Binomial with p = 0.5 are rejected: Phi(pi) = 0.
void validate(const DistributionSpec& spec);

/// Parses "family:key=value,..." e.g. "negbinomial:r=2,p=0.3". Raises
/// ParseError for malformed strings and InvalidArgument for bad parameters.
[[nodiscard]] DistributionSpec parse_distribution(std::string_view text);

/// Canonical spec string accepted by parse_distribution().
[[nodiscard]] std::string to_string(const DistributionSpec& spec);

/// Exact PMF; infinite supports are truncated once the kept mass reaches
/// kTruncationMass.
[[nodiscard]] Pmf zoo_pmf(const DistributionSpec& spec);

/// Closed-form characteristic function on the grid.
[[nodiscard]] CharFnSamples zoo_charfn(const DistributionSpec& spec, const FrequencyGrid& grid);

/// Closed-form complex muculants over `range` (hulled to contain 0).
[[nodiscard]] MuculantSeq zoo_muculants(const DistributionSpec& spec, IntRange range);

/// Closed-form cumulants kappa_1..kappa_k_max, k_max <= 8.
[[nodiscard]] CumulantVector zoo_cumulants(const DistributionSpec& spec, int k_max);

}  // namespace muculant
