#include "qprotect/error.hpp"

namespace qprotect {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::NotUnitary: return "NotUnitary";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::InvalidAlpha: return "InvalidAlpha";
    case ErrorCode::NotOrthonormal: return "NotOrthonormal";
    case ErrorCode::TooManyConstraints: return "TooManyConstraints";
    case ErrorCode::StrengthOutOfRange: return "StrengthOutOfRange";
    case ErrorCode::InvalidState: return "InvalidState";
    case ErrorCode::InvalidIndex: return "InvalidIndex";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::UnsupportedChannel: return "UnsupportedChannel";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::GridOutOfRange: return "GridOutOfRange";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

}  // namespace qprotect
