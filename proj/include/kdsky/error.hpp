#pragma once

#include <stdexcept>
#include <string>

namespace kdsky {

enum class ErrorCode {
  InvalidArgument = 1,
  DimensionMismatch,
  OutOfRange,
  WorkLimitExceeded,
  ParseError,
  IoError,
  UnknownId,
  Unsupported,
};

/// Every failure raised by the library carries one of the codes above so the
/// C layer can map it without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

}  // namespace kdsky
