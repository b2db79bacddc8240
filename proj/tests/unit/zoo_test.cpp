#include <gtest/gtest.h>

#include <cmath>

#include "muculant/error.hpp"
#include "muculant/zoo.hpp"

namespace muculant {
namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorCode::InvalidArgument;
}

TEST(ZooPmf, Examples) {
  const Pmf d = zoo_pmf(Degenerate{3});
  EXPECT_EQ(d.offset(), 3);
  EXPECT_EQ(d.size(), 1u);

  const Pmf b = zoo_pmf(Bernoulli{0.2});
  EXPECT_EQ(b.offset(), 0);
  EXPECT_DOUBLE_EQ(b.at(0), 0.8);
  EXPECT_DOUBLE_EQ(b.at(1), 0.2);

  const Pmf g = zoo_pmf(Geometric{0.5});
  EXPECT_DOUBLE_EQ(g.at(0), 0.5);
  EXPECT_DOUBLE_EQ(g.at(1), 0.25);
  EXPECT_DOUBLE_EQ(g.at(2), 0.125);
  EXPECT_GE(g.total_mass(), kTruncationMass);
  EXPECT_LE(g.tail_mass_bound(), 1e-12);
  EXPECT_NEAR(g.total_mass() + g.tail_mass_bound(), 1.0, 1e-15);
}

TEST(ZooPmf, NegativeBinomialAndBinomial) {
  const Pmf nb = zoo_pmf(NegativeBinomial{2, 0.3});
  // C(xi + 1, xi) 0.49 0.3^xi
  for (Index xi = 0; xi < 10; ++xi) EXPECT_NEAR(nb.at(xi), (xi + 1) * 0.49 * std::pow(0.3, xi), 1e-14);
  const Pmf b = zoo_pmf(Binomial{3, 0.2});
  EXPECT_NEAR(b.at(0), 0.512, 1e-15);
  EXPECT_NEAR(b.at(1), 0.384, 1e-15);
  EXPECT_NEAR(b.at(2), 0.096, 1e-15);
  EXPECT_NEAR(b.at(3), 0.008, 1e-15);
}

TEST(ZooPmf, LargePoissonTrimsLeadingZeros) {
  const Pmf p = zoo_pmf(Poisson{900.0});
  EXPECT_GT(p.offset(), 0);
  EXPECT_NEAR(p.total_mass(), 1.0, 1e-11);
}

TEST(ZooCharfn, Examples) {
  const FrequencyGrid g(512);
  EXPECT_NEAR(std::abs(zoo_charfn(Poisson{2.0}, g).values[g.zero_index()] - 1.0), 0.0, 1e-15);

  const auto bin = zoo_charfn(Binomial{4, 0.3}, g);
  const auto ber = zoo_charfn(Bernoulli{0.3}, g);
  for (std::size_t k = 0; k < g.size(); ++k) EXPECT_NEAR(std::abs(bin.values[k] - std::pow(ber.values[k], 4)), 0.0, 1e-14);
}

TEST(ZooCharfn, MatchesPmfEvaluation) {
  const FrequencyGrid g(4096);
  const DistributionSpec specs[] = {Poisson{2.0},         Poisson{7.5},      Degenerate{-4},   Bernoulli{0.2},
                                    Bernoulli{0.8},       Geometric{0.2},    Geometric{0.6},   NegativeBinomial{2, 0.3},
                                    NegativeBinomial{5, 0.5}, Binomial{5, 0.2}, Binomial{7, 0.9}};
  for (const auto& s : specs) {
    const auto a = zoo_charfn(s, g);
    const auto b = eval_charfn(zoo_pmf(s), g);
    double err = 0.0;
    for (std::size_t k = 0; k < g.size(); ++k) err = std::max(err, std::abs(a.values[k] - b.values[k]));
    EXPECT_LT(err, 1e-9) << to_string(s);
  }
}

TEST(ZooMuculants, Examples) {
  const auto p = zoo_muculants(Poisson{2.0}, {-5, 5});
  const std::vector<double> expected{0, 0, 0, 0, 0, -2, 2, 0, 0, 0, 0};
  EXPECT_EQ(p.values, expected);

  const auto d = zoo_muculants(Degenerate{1}, {1, 4});
  EXPECT_EQ(d.n_min, 0);
  EXPECT_EQ(d.linear_phase, 1);
  EXPECT_DOUBLE_EQ(d.at(1), 1.0);
  EXPECT_DOUBLE_EQ(d.at(2), -0.5);
  EXPECT_DOUBLE_EQ(d.at(3), 1.0 / 3.0);
  EXPECT_DOUBLE_EQ(d.at(4), -0.25);

  EXPECT_NEAR(zoo_muculants(Binomial{3, 0.2}, {0, 1}).at(1), 0.75, 1e-15);
  EXPECT_NEAR(zoo_muculants(Bernoulli{0.2}, {0, 0}).at(0), std::log(0.8), 1e-15);
}

TEST(ZooMuculants, BernoulliAboveHalf) {
  // log(p e^{j mu} (1 + rho e^{-j mu})), rho = (1 - p) / p.
  const double p = 0.7;
  const double rho = 0.3 / 0.7;
  const auto m = zoo_muculants(Bernoulli{p}, {-6, 6});
  EXPECT_EQ(m.linear_phase, 1);
  EXPECT_NEAR(m.at(0), std::log(p), 1e-15);
  EXPECT_NEAR(m.at(1), 1.0, 1e-15);
  EXPECT_NEAR(m.at(2), -0.5, 1e-15);
  EXPECT_NEAR(m.at(-1), -(1.0 - rho), 1e-15);
  EXPECT_NEAR(m.at(-2), 0.5 * (1.0 - rho * rho), 1e-15);
}

TEST(ZooMuculants, PoissonIsTheOnlyTwoTermLaw) {
  const DistributionSpec specs[] = {Poisson{3.0}, Degenerate{1},    Bernoulli{0.2},           Geometric{0.25},
                                    Bernoulli{0.9}, Binomial{10, 0.3}, NegativeBinomial{2, 0.5}};
  for (const auto& s : specs) {
    const auto m = zoo_muculants(s, {-20, 20});
    double tail = 0.0;
    for (Index n = -20; n <= 20; ++n) {
      if (n != 0 && n != 1) tail = std::max(tail, std::abs(m.at(n)));
    }
    EXPECT_EQ(tail < 1e-8, s.index() == 0) << to_string(s);
  }
}

TEST(ZooMuculants, ZeroSum) {
  EXPECT_EQ(zoo_muculants(Poisson{4.2}, {-3, 3}).sum(), 0.0);
  const DistributionSpec specs[] = {Geometric{0.3}, Bernoulli{0.2}, Binomial{5, 0.2}, NegativeBinomial{2, 0.3}};
  for (const auto& s : specs) EXPECT_LT(std::abs(zoo_muculants(s, {-400, 400}).sum()), 1e-6) << to_string(s);
}

TEST(ZooCumulants, Examples) {
  const auto p = zoo_cumulants(Poisson{3.0}, 4);
  EXPECT_EQ(p.values, (std::vector<double>{3, 3, 3, 3}));
  EXPECT_NEAR(zoo_cumulants(Bernoulli{0.2}, 2).kappa(2), 0.16, 1e-15);
  EXPECT_NEAR(zoo_cumulants(Geometric{0.5}, 2).kappa(2), 2.0, 1e-15);
  const auto d = zoo_cumulants(Degenerate{-2}, 3);
  EXPECT_EQ(d.values, (std::vector<double>{-2, 0, 0}));
}

TEST(ZooCumulants, MatchMomentOracle) {
  const DistributionSpec specs[] = {Bernoulli{0.3}, Bernoulli{0.8}, Geometric{0.4}, NegativeBinomial{3, 0.2},
                                    Binomial{6, 0.35}};
  for (const auto& s : specs) {
    const auto exact = zoo_cumulants(s, 6);
    const auto oracle = moments_to_cumulants(raw_moments(zoo_pmf(s), 6));
    for (int k = 1; k <= 6; ++k) {
      // The truncated tail of the oracle PMF dominates beyond k = 4.
      const double rel = k <= 4 ? 1e-7 : 1e-4;
      EXPECT_NEAR(exact.kappa(k), oracle.kappa(k), rel * std::max(1.0, std::abs(exact.kappa(k))))
          << to_string(s) << " k=" << k;
    }
  }
}

TEST(ZooCumulants, OrderLimit) {
  EXPECT_EQ(code_of([] { (void)zoo_cumulants(Poisson{1.0}, 9); }), ErrorCode::InvalidArgument);
  EXPECT_EQ(zoo_cumulants(Bernoulli{0.1}, 8).order(), 8);
}

TEST(ZooSpec, ValidatesParameters) {
  EXPECT_EQ(code_of([] { validate(Bernoulli{0.5}); }), ErrorCode::InvalidArgument);
  EXPECT_EQ(code_of([] { validate(Binomial{4, 0.5}); }), ErrorCode::InvalidArgument);
  EXPECT_EQ(code_of([] { validate(Poisson{0.0}); }), ErrorCode::InvalidArgument);
  EXPECT_EQ(code_of([] { validate(Geometric{1.0}); }), ErrorCode::InvalidArgument);
  EXPECT_EQ(code_of([] { validate(NegativeBinomial{0, 0.3}); }), ErrorCode::InvalidArgument);
  EXPECT_EQ(code_of([] { (void)zoo_pmf(Binomial{0, 0.3}); }), ErrorCode::InvalidArgument);
}

TEST(ZooSpec, Parses) {
  EXPECT_DOUBLE_EQ(std::get<Poisson>(parse_distribution("poisson:lambda=2")).lambda, 2.0);
  EXPECT_EQ(std::get<Degenerate>(parse_distribution("degenerate:m=-3")).m, -3);
  EXPECT_DOUBLE_EQ(std::get<Bernoulli>(parse_distribution("bernoulli:p=0.2")).p, 0.2);
  EXPECT_DOUBLE_EQ(std::get<Geometric>(parse_distribution("geometric:p=0.5")).p, 0.5);
  const auto nb = std::get<NegativeBinomial>(parse_distribution("negbinomial:r=2,p=0.3"));
  EXPECT_EQ(nb.r, 2);
  EXPECT_DOUBLE_EQ(nb.p, 0.3);
  const auto b = std::get<Binomial>(parse_distribution("binomial:p=0.2,n=5"));
  EXPECT_EQ(b.n, 5);
}

TEST(ZooSpec, RoundTripsThroughText) {
  const DistributionSpec specs[] = {Poisson{2.5}, Degenerate{7}, Bernoulli{0.125}, Geometric{0.1},
                                    NegativeBinomial{4, 0.75}, Binomial{12, 0.3}};
  for (const auto& s : specs) EXPECT_EQ(to_string(parse_distribution(to_string(s))), to_string(s));
}

TEST(ZooSpec, ParseErrors) {
  for (const char* bad : {"poisson", "poisson:lambda", "poisson:lambda=x", "poisson:lambda=2,k=1", "zeta:s=2",
                          "binomial:n=2.5,p=0.2", "geometric:p=0.5,p=0.5"}) {
    EXPECT_EQ(code_of([&] { (void)parse_distribution(bad); }), ErrorCode::ParseError) << bad;
  }
  EXPECT_EQ(code_of([] { (void)parse_distribution("bernoulli:p=0.5"); }), ErrorCode::InvalidArgument);
}

}  // namespace
}  // namespace muculant

namespace muculant {
namespace {

TEST(ZooMuculants, MatchPipeline) {
  const DistributionSpec specs[] = {Poisson{2.0},  Poisson{6.0},      Degenerate{-3},          Degenerate{5},
                                    Bernoulli{0.2}, Bernoulli{0.7},   Geometric{0.2},          Geometric{0.8},
                                    Binomial{5, 0.2}, Binomial{4, 0.85}, NegativeBinomial{2, 0.3}, NegativeBinomial{3, 0.6}};
  for (const auto& s : specs) {
    const Pmf f = zoo_pmf(s);
    const auto m = complex_muculants(f, 20, grid_for(f));
    const auto z = zoo_muculants(s, {-20, 20});
    EXPECT_EQ(m.linear_phase, z.linear_phase) << to_string(s);
    for (Index n = -20; n <= 20; ++n) EXPECT_NEAR(m.at(n), z.at(n), 1e-6) << to_string(s) << " n=" << n;
  }
}

}  // namespace
}  // namespace muculant
