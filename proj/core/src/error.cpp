#include "muculant/error.hpp"

#include <cstdio>

namespace muculant {

std::string_view error_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::NegativeMass: return "NegativeMass";
    case ErrorCode::NotNormalized: return "NotNormalized";
    case ErrorCode::NotCausal: return "NotCausal";
    case ErrorCode::GridTooCoarse: return "GridTooCoarse";
    case ErrorCode::EmptySample: return "EmptySample";
    case ErrorCode::NegativeSampleValue: return "NegativeSampleValue";
    case ErrorCode::CharFnVanishes: return "CharFnVanishes";
    case ErrorCode::ImagResidualTooLarge: return "ImagResidualTooLarge";
    case ErrorCode::NotApplicable: return "NotApplicable";
    case ErrorCode::SupportTooSmall: return "SupportTooSmall";
    case ErrorCode::TruncationUnsafe: return "TruncationUnsafe";
    case ErrorCode::PreconditionViolated: return "PreconditionViolated";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(error_name(code)) + ": " + message), code_(code) {}

std::string short_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

}  // namespace muculant
