#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace muculant {

// Stable identifiers; error_name() strings are part of the CLI contract.
enum class ErrorCode {
  InvalidArgument,
  ParseError,
  NegativeMass,
  NotNormalized,
  NotCausal,
  GridTooCoarse,
  EmptySample,
  NegativeSampleValue,
  CharFnVanishes,
  ImagResidualTooLarge,
  NotApplicable,
  SupportTooSmall,
  TruncationUnsafe,
  PreconditionViolated,
};

[[nodiscard]] std::string_view error_name(ErrorCode code) noexcept;

// Three significant digits, for messages.
[[nodiscard]] std::string short_number(double v);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  [[nodiscard]] ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace muculant
