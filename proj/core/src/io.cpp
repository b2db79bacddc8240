#include "muculant/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "muculant/error.hpp"

namespace muculant {

namespace {

std::string_view kind_name(MuculantKind k) { return k == MuculantKind::complex ? "complex" : "power"; }

std::string_view statistic_name(PoissonStatistic s) {
  return s == PoissonStatistic::whitened ? "whitened" : "sum_of_squares";
}

[[noreturn]] void schema(const std::string& what) { throw Error(ErrorCode::ParseError, what); }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object()) schema("expected a JSON object");
  const auto it = j.find(key);
  if (it == j.end()) schema(std::string("missing key '") + key + "'");
  return *it;
}

std::int64_t integer_field(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_number_integer()) schema(std::string("'") + key + "' must be an integer");
  return v.get<std::int64_t>();
}

std::vector<double> number_array(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_array()) schema(std::string("'") + key + "' must be an array");
  std::vector<double> out;
  out.reserve(v.size());
  for (const auto& x : v) {
    if (!x.is_number()) schema(std::string("'") + key + "' must hold numbers");
    out.push_back(x.get<double>());
  }
  return out;
}

void write(std::string& out, const Json& j, int indent, int depth) {
  const auto newline = [&](int d) {
    if (indent < 0) return;
    out += '\n';
    out.append(static_cast<std::size_t>(indent * d), ' ');
  };
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += '{';
      bool first = true;
      for (const auto& [key, value] : j.items()) {
        if (!first) out += ',';
        first = false;
        newline(depth + 1);
        out += Json(key).dump();
        out += indent < 0 ? ":" : ": ";
        write(out, value, indent, depth + 1);
      }
      newline(depth);
      out += '}';
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      out += '[';
      bool first = true;
      for (const auto& value : j) {
        if (!first) out += ',';
        first = false;
        newline(depth + 1);
        write(out, value, indent, depth + 1);
      }
      newline(depth);
      out += ']';
      return;
    }
    case Json::value_t::number_float:
      out += format_double(j.get<double>());
      return;
    default:
      out += j.dump();
  }
}

void flatten(const Json& j, const std::string& prefix, std::vector<CsvRow>& rows) {
  Index base = 0;
  for (const char* key : {"offset", "n_min", "k_min"}) {
    const auto it = j.find(key);
    if (it != j.end() && it->is_number_integer()) base = it->get<Index>();
  }
  for (const auto& [key, value] : j.items()) {
    const std::string name = prefix.empty() ? key : prefix + "." + key;
    if (value.is_object()) {
      flatten(value, name, rows);
    } else if (value.is_array()) {
      Index i = base;
      for (const auto& x : value) {
        if (x.is_number()) rows.push_back({name, i, x.get<double>()});
        ++i;
      }
    } else if (value.is_number()) {
      rows.push_back({name, 0, value.get<double>()});
    } else if (value.is_boolean()) {
      rows.push_back({name, 0, value.get<bool>() ? 1.0 : 0.0});
    }
  }
}

}  // namespace

std::string format_double(double v) {
  if (!std::isfinite(v)) return "null";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

Json to_json(const Pmf& f) {
  Json j;
  j["offset"] = f.offset();
  j["probs"] = std::vector<double>(f.probs().begin(), f.probs().end());
  j["tail_mass_bound"] = f.tail_mass_bound();
  return j;
}

Json to_json(const SignedSequence& s) {
  Json j;
  j["offset"] = s.offset;
  j["values"] = s.values;
  j["sum"] = s.sum;
  return j;
}

Json to_json(const MuculantSeq& m) {
  Json j;
  j["kind"] = kind_name(m.kind);
  j["n_min"] = m.n_min;
  j["n_max"] = m.n_max;
  j["values"] = m.values;
  j["imag_residual"] = m.imag_residual;
  j["linear_phase"] = m.linear_phase;
  return j;
}

Json to_json(const CumulantVector& k) {
  Json j;
  j["k_min"] = 1;
  j["k_max"] = k.order();
  j["kappa"] = k.values;
  return j;
}

Json to_json(const Decomposition& d) {
  Json j;
  j["minphase_seq"] = to_json(d.minphase_seq);
  j["allpass_seq"] = to_json(d.allpass_seq);
  j["minphase_is_pmf"] = d.minphase_is_pmf;
  j["allpass_is_pmf"] = d.allpass_is_pmf;
  j["allpass_sum"] = d.allpass_seq.sum;
  j["complex_muculants"] = to_json(d.complex_muculants);
  j["minphase_muculants"] = to_json(d.minphase_muculants);
  j["allpass_muculants"] = to_json(d.allpass_muculants);
  return j;
}

Json to_json(const PoissonTestResult& r) {
  Json j;
  j["statistic"] = r.statistic;
  j["lambda_hat"] = r.lambda_hat;
  j["threshold"] = r.threshold;
  j["p_value"] = r.p_value;
  j["reject"] = r.reject;
  j["window"] = {{"lo", r.window.lo}, {"hi", r.window.hi}};
  j["n_bootstrap"] = r.n_bootstrap;
  j["n_bootstrap_failed"] = r.n_bootstrap_failed;
  j["seed"] = r.seed;
  j["alpha"] = r.alpha;
  j["statistic_kind"] = statistic_name(r.statistic_kind);
  j["sample_size"] = r.sample_size;
  j["grid_size"] = r.grid_size;
  return j;
}

Pmf pmf_from_json(const Json& j) { return validate_pmf(integer_field(j, "offset"), number_array(j, "probs")); }

bool looks_like_muculants(const Json& j) {
  return j.is_object() && j.contains("kind") && j.contains("n_min") && j.contains("values");
}

MuculantSeq muculants_from_json(const Json& j) {
  MuculantSeq m;
  const Json& kind = field(j, "kind");
  if (kind == "complex") {
    m.kind = MuculantKind::complex;
  } else if (kind == "power") {
    m.kind = MuculantKind::power;
  } else {
    schema("'kind' must be \"complex\" or \"power\"");
  }
  m.n_min = integer_field(j, "n_min");
  m.n_max = integer_field(j, "n_max");
  m.values = number_array(j, "values");
  if (m.n_min > 0 || m.n_max < 0) schema("need n_min <= 0 <= n_max");
  if (static_cast<Index>(m.values.size()) != m.n_max - m.n_min + 1) schema("'values' length does not match range");
  if (j.contains("linear_phase")) m.linear_phase = integer_field(j, "linear_phase");
  if (j.contains("imag_residual")) {
    const Json& r = j["imag_residual"];
    if (!r.is_number()) schema("'imag_residual' must be a number");
    m.imag_residual = r.get<double>();
  }
  return m;
}

Json parse_json(std::istream& in) {
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
}

std::vector<std::int64_t> read_samples(std::istream& in) {
  std::vector<std::int64_t> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos || line[b] == '#') continue;
    const auto e = line.find_last_not_of(" \t\r");
    const char* first = line.data() + b;
    const char* last = line.data() + e + 1;
    if (*first == '+') ++first;
    std::int64_t v = 0;
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc{} || ptr != last) {
      throw Error(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": not an integer");
    }
    out.push_back(v);
  }
  return out;
}

std::string dump(const Json& j, int indent) {
  std::string out;
  write(out, j, indent, 0);
  return out;
}

std::vector<CsvRow> csv_rows(const Json& j) {
  std::vector<CsvRow> rows;
  if (j.is_object()) flatten(j, "", rows);
  return rows;
}

std::string to_csv(const std::vector<CsvRow>& rows) {
  std::string out = "series,index,value\n";
  for (const auto& r : rows) {
    out += r.series;
    out += ',';
    out += std::to_string(r.index);
    out += ',';
    out += format_double(r.value);
    out += '\n';
  }
  return out;
}

}  // namespace muculant
