#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace muculant::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDomainError = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitReject = 3;

/// Runs one command line (without the program name). Results go to `out`,
/// diagnostics as {"error": name, "message": text} to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace muculant::cli
