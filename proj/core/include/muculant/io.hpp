#pragma once

#include <cstdint>
#include <istream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "muculant/decomposition.hpp"
#include "muculant/inference.hpp"
#include "muculant/muculants.hpp"
#include "muculant/pmf.hpp"

namespace muculant {

using Json = nlohmann::ordered_json;

[[nodiscard]] Json to_json(const Pmf& f);
[[nodiscard]] Json to_json(const SignedSequence& s);
[[nodiscard]] Json to_json(const MuculantSeq& m);
[[nodiscard]] Json to_json(const CumulantVector& k);
[[nodiscard]] Json to_json(const Decomposition& d);
[[nodiscard]] Json to_json(const PoissonTestResult& r);

/// {"offset": int, "probs": [...]} through validate_pmf(). ParseError on
/// schema violations.
[[nodiscard]] Pmf pmf_from_json(const Json& j);

/// Inverse of to_json(MuculantSeq); "linear_phase" and "imag_residual" are
/// optional.
[[nodiscard]] MuculantSeq muculants_from_json(const Json& j);

/// True if the object carries the muculant schema keys.
[[nodiscard]] bool looks_like_muculants(const Json& j);

[[nodiscard]] Json parse_json(std::istream& in);

/// One signed integer per line; blank lines and lines starting with '#' are
/// skipped. ParseError otherwise.
[[nodiscard]] std::vector<std::int64_t> read_samples(std::istream& in);

/// Serializes with every floating-point number printed as %.17g.
[[nodiscard]] std::string dump(const Json& j, int indent = 2);

[[nodiscard]] std::string format_double(double v);

struct CsvRow {
  std::string series;
  std::int64_t index = 0;
  double value = 0.0;
};

/// Long-format rendering of a result document: every numeric leaf becomes
/// one row. Arrays of numbers are indexed by their "offset"/"n_min" sibling
/// when present, else from 0; scalars get index 0. Nested objects prefix
/// their key with "parent.". Booleans print as 0/1.
[[nodiscard]] std::vector<CsvRow> csv_rows(const Json& j);

[[nodiscard]] std::string to_csv(const std::vector<CsvRow>& rows);

}  // namespace muculant
