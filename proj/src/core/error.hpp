#pragma once

#include <stdexcept>
#include <string>

namespace bellkcc {

// Numeric values line up with bk_status in the C header.
enum class ErrorCode : int {
  InvalidArgument = 1,
  NonHermitian = 2,
  TraceNotOne = 3,
  NotPositive = 4,
  UnnormalizedSetting = 5,
  BudgetTooSmall = 6,
  MaxDepthExceeded = 7,
  NonFiniteSample = 8,
  ModulusOutOfRange = 9,
  NonPositiveBeta = 10,
  DivergentAtCritical = 11,
  LatticeTooLarge = 12,
  IndexOutOfRange = 13,
  NoInteriorPeak = 14,
  ParseError = 15,
  IoError = 16,
};

const char* error_code_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  [[nodiscard]] ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace bellkcc
