#pragma once

#include <stdexcept>
#include <string>

namespace corrint {

/// What went wrong, at the granularity the CLI maps to exit codes.
enum class ErrorKind {
  Parse,       ///< malformed input text (bad CSV/JSON structure)
  Validation,  ///< structurally sound input violating a data invariant
  Domain,      ///< argument outside an operation's valid range
  Capacity,    ///< request exceeds a configured materialization/enumeration limit
  Io,          ///< file or stream failure
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string message)
      : std::runtime_error(std::move(message)), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace corrint
