#include "qroof/error.hpp"

namespace qroof {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::NotPositiveMap: return "NotPositiveMap";
    case ErrorCode::NoPsdWindow: return "NoPsdWindow";
    case ErrorCode::AmbiguousW0: return "AmbiguousW0";
    case ErrorCode::InvalidState: return "InvalidState";
    case ErrorCode::RankTooHigh: return "RankTooHigh";
    case ErrorCode::WrongDims: return "WrongDims";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

}  // namespace qroof
