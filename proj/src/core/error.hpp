#pragma once

#include <stdexcept>
#include <string>

namespace seqedge {

enum class ErrorCode {
  InvalidInput = 1,
  Resource = 2,
  DegeneratePostselection = 3,
  Io = 4,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void throw_invalid(const std::string& what) {
  throw Error(ErrorCode::InvalidInput, what);
}

}  // namespace seqedge
