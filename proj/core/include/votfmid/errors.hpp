#pragma once

#include <stdexcept>
#include <string>

namespace votfmid {

/// Error categories used across the library. The CLI maps Config/Usage/Parse
/// to exit code 1 and everything else to exit code 2.
enum class ErrorKind {
  Domain,    // argument outside the mathematical domain of an operation
  Config,    // inconsistent or unsupported run configuration
  Usage,     // API misuse (shape mismatch, wrong level, ...)
  Internal,  // invariant violation indicating a bug
  Singular,  // linear system numerically singular
  Oracle,    // test oracle failed to converge
  Io,        // file I/O failure
  Parse,     // config file / flag parsing failure
};

class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string& msg)
      : std::runtime_error(msg), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& msg) {
  throw Error(kind, msg);
}

inline void require(bool cond, ErrorKind kind, const std::string& msg) {
  if (!cond) fail(kind, msg);
}

}  // namespace votfmid
