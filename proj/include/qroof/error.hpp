#pragma once

#include <stdexcept>
#include <string>

namespace qroof {

enum class ErrorCode {
  OutOfRange,
  NotPositiveMap,
  NoPsdWindow,
  AmbiguousW0,
  InvalidState,
  RankTooHigh,
  WrongDims,
  InvalidConfig,
  ParseError,
};

const char* to_string(ErrorCode code);

// Single exception type for the library; callers dispatch on code().
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace qroof
