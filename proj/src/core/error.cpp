#include "error.hpp"

namespace bellkcc {

const char* error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::NonHermitian: return "NonHermitian";
    case ErrorCode::TraceNotOne: return "TraceNotOne";
    case ErrorCode::NotPositive: return "NotPositive";
    case ErrorCode::UnnormalizedSetting: return "UnnormalizedSetting";
    case ErrorCode::BudgetTooSmall: return "BudgetTooSmall";
    case ErrorCode::MaxDepthExceeded: return "MaxDepthExceeded";
    case ErrorCode::NonFiniteSample: return "NonFiniteSample";
    case ErrorCode::ModulusOutOfRange: return "ModulusOutOfRange";
    case ErrorCode::NonPositiveBeta: return "NonPositiveBeta";
    case ErrorCode::DivergentAtCritical: return "DivergentAtCritical";
    case ErrorCode::LatticeTooLarge: return "LatticeTooLarge";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::NoInteriorPeak: return "NoInteriorPeak";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

}  // namespace bellkcc
