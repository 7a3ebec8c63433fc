#pragma once

#include <stdexcept>
#include <string>

namespace lrc {

// Error categories aligned with the CLI exit codes: the tool maps code()
// straight to the process exit status.
enum class ErrorCode : int {
  kParse = 2,         // malformed input file or value out of its domain
  kLimit = 3,         // an enumeration/expansion/size cap was exceeded
  kInvalidInput = 4,  // well-formed input that violates a semantic condition
  kAssertion = 5,     // internal cross-check or verification failure
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const { return code_; }
  int exit_code() const { return static_cast<int>(code_); }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& msg) {
  throw Error(code, msg);
}

}  // namespace lrc
