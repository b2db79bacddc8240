#include <gtest/gtest.h>

#include <sstream>

#include "muculant/error.hpp"
#include "muculant/io.hpp"
#include "muculant/zoo.hpp"

namespace muculant {
namespace {

TEST(Json, PmfRoundTrip) {
  const Pmf f = validate_pmf(-2, {0.1, 0.2, 0.7});
  const Pmf g = pmf_from_json(Json::parse(dump(to_json(f))));
  EXPECT_EQ(g.offset(), -2);
  ASSERT_EQ(g.size(), 3u);
  for (Index xi = -2; xi <= 0; ++xi) EXPECT_EQ(g.at(xi), f.at(xi));
}

TEST(Json, PmfSchemaErrors) {
  for (const char* bad : {R"([1, 2])", R"({"probs": [1]})", R"({"offset": 0.5, "probs": [1]})",
                          R"({"offset": 0, "probs": 1})", R"({"offset": 0, "probs": ["a"]})"}) {
    try {
      (void)pmf_from_json(Json::parse(bad));
      ADD_FAILURE() << bad;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::ParseError) << bad;
    }
  }
  try {
    (void)pmf_from_json(Json::parse(R"({"offset": 0, "probs": [0.5, 0.6]})"));
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotNormalized);
  }
}

TEST(Json, MuculantRoundTripIsBitExact) {
  auto m = zoo_muculants(Bernoulli{0.7}, {-7, 9});
  m.imag_residual = 1.2345678901234567e-12;
  const auto text = dump(to_json(m));
  const auto back = muculants_from_json(Json::parse(text));
  EXPECT_EQ(back.values, m.values);
  EXPECT_EQ(back.n_min, -7);
  EXPECT_EQ(back.n_max, 9);
  EXPECT_EQ(back.linear_phase, 1);
  EXPECT_EQ(back.imag_residual, m.imag_residual);
  EXPECT_TRUE(looks_like_muculants(Json::parse(text)));
  EXPECT_FALSE(looks_like_muculants(to_json(zoo_pmf(Bernoulli{0.2}))));
}

TEST(Json, MuculantSchemaErrors) {
  for (const char* bad : {R"({"kind": "other", "n_min": 0, "n_max": 0, "values": [0]})",
                          R"({"kind": "complex", "n_min": 1, "n_max": 2, "values": [0, 0]})",
                          R"({"kind": "complex", "n_min": -1, "n_max": 1, "values": [0, 0]})"}) {
    EXPECT_THROW((void)muculants_from_json(Json::parse(bad)), Error) << bad;
  }
  const auto m = muculants_from_json(Json::parse(R"({"kind": "power", "n_min": -1, "n_max": 1, "values": [1, 2, 1]})"));
  EXPECT_EQ(m.kind, MuculantKind::power);
  EXPECT_EQ(m.linear_phase, 0);
}

TEST(Dump, SeventeenDigits) {
  Json j;
  j["x"] = 0.1;
  j["n"] = 3;
  j["b"] = true;
  j["s"] = "a\"b";
  EXPECT_EQ(dump(j, -1), R"({"x":0.10000000000000001,"n":3,"b":true,"s":"a\"b"})");
  EXPECT_EQ(format_double(1.0 / 3.0), "0.33333333333333331");
  EXPECT_EQ(dump(Json::array(), 2), "[]");
}

TEST(Csv, LongFormatIndexedBySiblings) {
  const auto m = zoo_muculants(Poisson{2.0}, {-1, 1});
  const auto csv = to_csv(csv_rows(to_json(m)));
  EXPECT_EQ(csv,
            "series,index,value\n"
            "n_min,0,-1\n"
            "n_max,0,1\n"
            "values,-1,0\n"
            "values,0,-2\n"
            "values,1,2\n"
            "imag_residual,0,0\n"
            "linear_phase,0,0\n");
  const auto k = csv_rows(to_json(zoo_cumulants(Poisson{2.0}, 2)));
  ASSERT_EQ(k.size(), 4u);
  EXPECT_EQ(k[2].series, "kappa");
  EXPECT_EQ(k[2].index, 1);
}

TEST(Samples, ParsesCommentsAndSigns) {
  std::istringstream in("# header\n3\n\n  -2 \n+5\r\n# trailing\n");
  EXPECT_EQ(read_samples(in), (std::vector<std::int64_t>{3, -2, 5}));
}

TEST(Samples, RejectsGarbage) {
  for (const char* bad : {"1\n2.5\n", "x\n", "1 2\n"}) {
    std::istringstream in(bad);
    try {
      (void)read_samples(in);
      ADD_FAILURE() << bad;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::ParseError);
    }
  }
}

TEST(ParseJson, ReportsParseError) {
  std::istringstream in("{\"offset\": ");
  try {
    (void)parse_json(in);
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ParseError);
  }
}

}  // namespace
}  // namespace muculant
