#pragma once

#include <stdexcept>
#include <string>

namespace powerspec {

enum class ErrorKind {
  kParse,
  kInvalidArgument,
  kBudget,
  kNumeric,
  kInternal,
};

// All library failures are reported with this exception; the C API maps the
// kind onto its status codes.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message) {
  throw Error(kind, message);
}

}  // namespace powerspec
