#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "muculant/io.hpp"
#include "muculant/zoo.hpp"
#include "oracles.hpp"

namespace muculant {
namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = std::filesystem::temp_directory_path() /
           ("muculant_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    std::filesystem::create_directories(dir_);
  }
  void TearDown() override { std::filesystem::remove_all(dir_); }

  std::string write(const std::string& name, const std::string& text) {
    const auto p = dir_ / name;
    std::ofstream(p) << text;
    return p.string();
  }

  std::filesystem::path dir_;
};

TEST_F(Cli, MuculantsOfPoisson) {
  const auto r = run({"muculants", "--dist", "poisson:lambda=2", "--n-max", "5"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = Json::parse(r.out);
  EXPECT_EQ(j["kind"], "complex");
  EXPECT_EQ(j["n_min"], -5);
  const auto m = muculants_from_json(j);
  EXPECT_NEAR(m.at(0), -2.0, 1e-9);
  EXPECT_NEAR(m.at(1), 2.0, 1e-9);
  EXPECT_NEAR(m.at(3), 0.0, 1e-9);
}

TEST_F(Cli, CumulantsOfGeometric) {
  const auto r = run({"cumulants", "--dist", "geometric:p=0.5", "--k-max", "2"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto k = Json::parse(r.out)["kappa"];
  ASSERT_EQ(k.size(), 2u);
  EXPECT_NEAR(k[0].get<double>(), 1.0, 1e-8);
  EXPECT_NEAR(k[1].get<double>(), 2.0, 1e-7);
}

TEST_F(Cli, DecomposeLeftGeometric) {
  const Pmf f = reflect(zoo_pmf(Geometric{0.2}));
  const auto path = write("leftgeom.json", dump(to_json(f)));
  const auto r = run({"decompose", "--input", path});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = Json::parse(r.out);
  const Index offset = j["allpass_seq"]["offset"];
  EXPECT_NEAR(j["allpass_seq"]["values"][static_cast<std::size_t>(1 - offset)].get<double>(), -0.8, 1e-9);
  EXPECT_FALSE(j["allpass_is_pmf"].get<bool>());
  EXPECT_TRUE(j["minphase_is_pmf"].get<bool>());
  EXPECT_NEAR(j["allpass_sum"].get<double>(), 1.0, 1e-8);
}

TEST_F(Cli, CsvMatchesJson) {
  const auto j = run({"power-muculants", "--dist", "binomial:n=5,p=0.2", "--n-max", "4"});
  const auto c = run({"power-muculants", "--dist", "binomial:n=5,p=0.2", "--n-max", "4", "--output", "csv"});
  ASSERT_EQ(j.code, 0);
  ASSERT_EQ(c.code, 0);
  EXPECT_EQ(c.out, to_csv(csv_rows(Json::parse(j.out))));
  EXPECT_NE(c.out.find("values,-4,"), std::string::npos);
}

TEST_F(Cli, MuculantJsonFeedsCumulantsAndReconstruct) {
  const auto m = run({"zoo", "--dist", "poisson:lambda=3", "--n-max", "10"});
  ASSERT_EQ(m.code, 0) << m.err;
  const auto path = write("m.json", dump(Json::parse(m.out)["muculants"]));
  const auto k = run({"cumulants", "--input", path, "--k-max", "3"});
  ASSERT_EQ(k.code, 0) << k.err;
  for (const auto& v : Json::parse(k.out)["kappa"]) EXPECT_NEAR(v.get<double>(), 3.0, 1e-12);
  const auto s = run({"reconstruct", "--input", path, "--support=0:40"});
  ASSERT_EQ(s.code, 0) << s.err;
  const auto seq = Json::parse(s.out);
  EXPECT_EQ(seq["offset"], 0);
  EXPECT_NEAR(seq["values"][0].get<double>(), std::exp(-3.0), 1e-12);
}

TEST_F(Cli, ZooOutput) {
  const auto r = run({"zoo", "--dist", "negbinomial:r=2,p=0.3", "--k-max", "3"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = Json::parse(r.out);
  EXPECT_EQ(j["spec"], "negbinomial:r=2,p=0.29999999999999999");
  EXPECT_EQ(j["cumulants"]["kappa"].size(), 3u);
  EXPECT_EQ(j["muculants"]["n_max"], 20);
}

TEST_F(Cli, PoissonTestExitCodes) {
  oracle::Rng rng(1);
  std::string poisson = "# poisson sample\n";
  for (auto x : oracle::draw(zoo_pmf(Poisson{2.0}), 2000, rng)) poisson += std::to_string(x) + "\n";
  std::string geometric;
  for (auto x : oracle::draw(zoo_pmf(Geometric{0.25}), 10000, rng)) geometric += std::to_string(x) + "\n";

  const auto a = run({"poisson-test", "--input", write("p.txt", poisson), "--bootstrap", "100", "--seed", "3"});
  EXPECT_TRUE(a.code == 0 || a.code == 3) << a.err;
  const auto j = Json::parse(a.out);
  EXPECT_EQ(j["n_bootstrap"], 100);
  EXPECT_EQ(j["seed"], 3);
  EXPECT_EQ(a.code == 3, j["reject"].get<bool>());

  const auto b = run({"poisson-test", "--input", write("g.txt", geometric), "--bootstrap", "100",
                      "--window-lo=-4", "--window-hi", "4", "--statistic", "raw"});
  EXPECT_EQ(Json::parse(b.out)["statistic_kind"], "sum_of_squares");
  EXPECT_EQ(Json::parse(b.out)["window"]["lo"], -4);

  const auto c = run({"poisson-test", "--input", write("g2.txt", geometric), "--bootstrap", "100"});
  EXPECT_EQ(c.code, 3);
}

TEST_F(Cli, DomainErrorsExitOne) {
  const auto p = write("half.json", R"({"offset": 0, "probs": [0.5, 0.5]})");
  const auto r = run({"muculants", "--input", p});
  EXPECT_EQ(r.code, 1);
  const auto e = Json::parse(r.err);
  EXPECT_EQ(e["error"], "CharFnVanishes");

  const auto q = run({"muculants", "--input", write("bad.json", R"({"offset": 0, "probs": [0.5, 0.6]})")});
  EXPECT_EQ(q.code, 1);
  EXPECT_EQ(Json::parse(q.err)["error"], "NotNormalized");

  const auto t = run({"cumulants", "--dist", "degenerate:m=2", "--k-max", "3"});
  EXPECT_EQ(t.code, 1);
  EXPECT_EQ(Json::parse(t.err)["error"], "TruncationUnsafe");

  const auto n = run({"poisson-test", "--input", write("neg.txt", "1\n-1\n")});
  EXPECT_EQ(n.code, 1);
  EXPECT_EQ(Json::parse(n.err)["error"], "NegativeSampleValue");
}

TEST_F(Cli, UsageErrorsExitTwo) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({"muculants"}).code, 2);
  EXPECT_EQ(run({"muculants", "--dist", "poisson:lambda=1", "--input", "x.json"}).code, 2);
  EXPECT_EQ(run({"muculants", "--dist", "bernoulli:p=0.5"}).code, 2);
  EXPECT_EQ(run({"muculants", "--dist", "poisson:lambda=1", "--output", "xml"}).code, 2);
  EXPECT_EQ(run({"muculants", "--dist", "poisson:lambda=1", "--grid", "100"}).code, 2);
  EXPECT_EQ(run({"muculants", "--input", write("x.csv", "1\n")}).code, 2);
  EXPECT_EQ(run({"decompose", "--input", write("s.txt", "1\n2\n")}).code, 2);
  const auto u = run({"zoo", "--dist", "zeta:s=2"});
  EXPECT_EQ(u.code, 2);
  EXPECT_EQ(Json::parse(u.err)["error"], "ParseError");
}

TEST_F(Cli, HelpExitsZero) {
  const auto r = run({"--help"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("poisson-test"), std::string::npos);
  EXPECT_EQ(run({"decompose", "--help"}).code, 0);
}

TEST_F(Cli, SampleFileMuculants) {
  std::string text;
  for (int i = 0; i < 300; ++i) text += "7\n";
  const auto r = run({"muculants", "--input", write("seven.txt", text), "--n-max", "3"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(Json::parse(r.out)["linear_phase"], 7);
}

}  // namespace
}  // namespace muculant
