#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qprotect {

enum class ErrorCode {
  NotHermitian,
  NotUnitary,
  DimensionMismatch,
  InvalidAlpha,
  NotOrthonormal,
  TooManyConstraints,
  StrengthOutOfRange,
  InvalidState,
  InvalidIndex,
  OutOfRange,
  UnsupportedChannel,
  ParseError,
  GridOutOfRange,
  IoError,
};

std::string_view to_string(ErrorCode code);

/// Exception type thrown by every qprotect operation. The code lets callers
/// (and the CLI's exit-status mapping) branch without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace qprotect
