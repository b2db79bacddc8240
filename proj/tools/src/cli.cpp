#include "cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <optional>

#include <CLI11.hpp>

#include "muculant/decomposition.hpp"
#include "muculant/error.hpp"
#include "muculant/inference.hpp"
#include "muculant/io.hpp"
#include "muculant/muculants.hpp"
#include "muculant/zoo.hpp"

namespace muculant::cli {

namespace {

struct Options {
  std::string input;
  std::string dist;
  std::string output = "json";
  std::string support;
  std::string statistic = "whitened";
  std::size_t grid = 0;
  Index n_max = -1;
  int k_max = 4;
  std::uint64_t seed = 0;
  double alpha = 0.05;
  std::size_t bootstrap = 1000;
  Index window_lo = -8;
  Index window_hi = 8;
  double min_abs = kVanishingThreshold;
  unsigned threads = 0;
};

struct Input {
  std::optional<DistributionSpec> spec;
  std::optional<Pmf> pmf;
  std::optional<MuculantSeq> muculants;
  std::optional<std::vector<std::int64_t>> samples;
};

[[noreturn]] void usage(const std::string& what) { throw Error(ErrorCode::InvalidArgument, what); }

Input load(const Options& o) {
  if (o.input.empty() == o.dist.empty()) usage("exactly one of --input and --dist is required");
  Input in;
  if (!o.dist.empty()) {
    in.spec = parse_distribution(o.dist);
    in.pmf = zoo_pmf(*in.spec);
    return in;
  }
  const auto ext = std::filesystem::path(o.input).extension().string();
  if (ext != ".json" && ext != ".txt") usage("--input must end in .json (PMF or muculants) or .txt (samples)");
  std::ifstream file(o.input);
  if (!file) usage("cannot open '" + o.input + "'");
  if (ext == ".txt") {
    in.samples = read_samples(file);
    return in;
  }
  const Json j = parse_json(file);
  if (looks_like_muculants(j)) {
    in.muculants = muculants_from_json(j);
  } else {
    in.pmf = pmf_from_json(j);
  }
  return in;
}

FrequencyGrid grid_for_pmf(const Options& o, const Pmf& f) {
  if (o.grid != 0) return FrequencyGrid(o.grid);
  return FrequencyGrid::at_least(std::max(grid_for(f).size(), 4 * static_cast<std::size_t>(o.n_max)));
}

FrequencyGrid grid_for_samples(const Options& o, std::span<const std::int64_t> xs) {
  if (o.grid != 0) return FrequencyGrid(o.grid);
  if (xs.empty()) throw Error(ErrorCode::EmptySample, "no observations");
  const auto [lo, hi] = std::minmax_element(xs.begin(), xs.end());
  const Index extent = std::max(*hi - *lo + 1, std::max(std::abs(*lo), std::abs(*hi)) + 1);
  return FrequencyGrid::at_least(std::max({FrequencyGrid::kDefaultSize, 4 * static_cast<std::size_t>(extent),
                                           4 * static_cast<std::size_t>(o.n_max)}));
}

MuculantSeq complex_from(const Options& o, const Input& in) {
  if (in.muculants) {
    if (in.muculants->kind != MuculantKind::complex) usage("input holds power muculants");
    return *in.muculants;
  }
  if (in.samples) return estimate_muculants(*in.samples, grid_for_samples(o, *in.samples), o.n_max);
  return complex_muculants(*in.pmf, o.n_max, grid_for_pmf(o, *in.pmf));
}

const Pmf& require_pmf(const Input& in, const char* command) {
  if (!in.pmf) usage(std::string(command) + " needs a PMF (--dist or a PMF .json)");
  return *in.pmf;
}

IntRange parse_support(const std::string& text) {
  const auto sep = text.find_first_of(":,", 1);
  if (sep == std::string::npos) usage("--support expects lo:hi");
  try {
    std::size_t a = 0;
    std::size_t b = 0;
    const auto lo = std::stoll(text.substr(0, sep), &a);
    const auto hi = std::stoll(text.substr(sep + 1), &b);
    if (a != sep || b != text.size() - sep - 1 || hi < lo) usage("--support expects lo:hi with lo <= hi");
    return {lo, hi};
  } catch (const std::logic_error&) {
    usage("--support expects lo:hi");
  }
}

IntRange default_support(const Input& in, const MuculantSeq& m) {
  if (in.pmf) {
    const Index w = static_cast<Index>(in.pmf->size());
    return {std::min<Index>(in.pmf->offset() - w, 0), std::max<Index>(in.pmf->last_index() + w, 0)};
  }
  const Index e = std::max<Index>({-m.n_min, m.n_max, 1});
  return {-4 * e, 4 * e};
}

struct Outcome {
  Json document;
  int exit_code = kExitOk;
};

Outcome dispatch(const std::string& command, const Options& o) {
  const Input in = load(o);
  if (command == "muculants") return {to_json(complex_from(o, in))};
  if (command == "power-muculants") {
    if (in.muculants) usage("power-muculants needs a PMF or samples");
    if (in.samples) {
      return {to_json(power_muculants(empirical_charfn(*in.samples, grid_for_samples(o, *in.samples)), o.n_max))};
    }
    return {to_json(power_muculants(eval_charfn(*in.pmf, grid_for_pmf(o, *in.pmf)), o.n_max))};
  }
  if (command == "cumulants") return {to_json(cumulants_from_muculants(complex_from(o, in), o.k_max))};
  if (command == "reconstruct") {
    const auto m = complex_from(o, in);
    const IntRange support = o.support.empty() ? default_support(in, m) : parse_support(o.support);
    return {to_json(reconstruct_sequence(m, support))};
  }
  if (command == "decompose") {
    const Pmf& f = require_pmf(in, "decompose");
    return {to_json(o.grid != 0 ? decompose(f, o.n_max, FrequencyGrid(o.grid)) : decompose(f, o.n_max))};
  }
  if (command == "zoo") {
    if (!in.spec) usage("zoo needs --dist");
    Json j;
    j["spec"] = to_string(*in.spec);
    j["pmf"] = to_json(*in.pmf);
    j["muculants"] = to_json(zoo_muculants(*in.spec, {-o.n_max, o.n_max}));
    j["cumulants"] = to_json(zoo_cumulants(*in.spec, o.k_max));
    return {j};
  }
  // poisson-test
  if (!in.samples) usage("poisson-test needs a sample file (--input <file>.txt)");
  PoissonTestOptions t;
  t.alpha = o.alpha;
  t.window = {o.window_lo, o.window_hi};
  t.n_bootstrap = o.bootstrap;
  t.seed = o.seed;
  if (o.grid != 0) t.grid_size = o.grid;
  t.statistic = o.statistic == "raw" ? PoissonStatistic::sum_of_squares : PoissonStatistic::whitened;
  t.min_abs = o.min_abs;
  t.threads = o.threads;
  const auto r = poisson_test(*in.samples, t);
  return {to_json(r), r.reject ? kExitReject : kExitOk};
}

void report(std::ostream& err, std::string_view name, const std::string& message) {
  Json j;
  j["error"] = name;
  j["message"] = message;
  err << dump(j, -1) << '\n';
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Muculants of integer-valued random variables", "muculant"};
  app.require_subcommand(1);
  Options o;

  const auto add_common = [&](CLI::App* sub, Index default_n_max) {
    o.n_max = -1;
    sub->add_option("--input", o.input, "PMF or muculant JSON (.json) or sample file (.txt)");
    sub->add_option("--dist", o.dist, "Distribution, e.g. poisson:lambda=2");
    sub->add_option("--grid", o.grid, "Grid size N (power of two >= 64); chosen automatically if omitted");
    if (default_n_max > 0) {
      sub->add_option("--n-max", o.n_max, "Largest |n| (default " + std::to_string(default_n_max) + ")");
    }
    sub->add_option("--output", o.output, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    sub->callback([&o, default_n_max] {
      if (o.n_max < 0) o.n_max = default_n_max;
    });
  };

  auto* muc = app.add_subcommand("muculants", "Complex muculants");
  add_common(muc, 20);
  auto* pow = app.add_subcommand("power-muculants", "Power muculants");
  add_common(pow, 20);
  auto* cum = app.add_subcommand("cumulants", "Cumulants from complex muculants");
  add_common(cum, 200);
  cum->add_option("--k-max", o.k_max, "Highest cumulant order")->check(CLI::PositiveNumber);
  auto* rec = app.add_subcommand("reconstruct", "Signed sequence from complex muculants");
  add_common(rec, 20);
  rec->add_option("--support", o.support, "Reconstruction range lo:hi");
  auto* dec = app.add_subcommand("decompose", "Minimum-phase / allpass decomposition");
  add_common(dec, 200);
  auto* zoo = app.add_subcommand("zoo", "Closed forms of a standard distribution");
  add_common(zoo, 20);
  zoo->add_option("--k-max", o.k_max, "Highest cumulant order (<= 8)")->check(CLI::Range(1, 8));
  auto* test = app.add_subcommand("poisson-test", "Bootstrap test for Poissonity");
  add_common(test, 0);
  test->add_option("--alpha", o.alpha, "Significance level");
  test->add_option("--bootstrap", o.bootstrap, "Number of bootstrap replicates")->check(CLI::PositiveNumber);
  test->add_option("--seed", o.seed, "Bootstrap seed");
  test->add_option("--window-lo", o.window_lo, "Window start");
  test->add_option("--window-hi", o.window_hi, "Window end");
  test->add_option("--statistic", o.statistic, "whitened or raw")->check(CLI::IsMember({"whitened", "raw"}));
  test->add_option("--min-abs", o.min_abs, "Smallest admissible |Phi_hat|");
  test->add_option("--threads", o.threads, "Worker threads (0 = all cores)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e, out, err);
    report(err, "UsageError", e.what());
    return kExitUsage;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    const Outcome result = dispatch(command, o);
    if (o.output == "csv") {
      out << to_csv(csv_rows(result.document));
    } else {
      out << dump(result.document) << '\n';
    }
    return result.exit_code;
  } catch (const Error& e) {
    report(err, error_name(e.code()), e.what());
    const bool usage_error = e.code() == ErrorCode::InvalidArgument || e.code() == ErrorCode::ParseError;
    return usage_error ? kExitUsage : kExitDomainError;
  } catch (const std::exception& e) {
    report(err, "InternalError", e.what());
    return kExitDomainError;
  }
}

}  // namespace muculant::cli
