#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace spreclone {

enum class ErrorKind {
  NonAssociative,
  BadUnit,
  MalformedTable,
  ArityMismatch,
  DomainMismatch,
  BadSignum,
  BadRowIndex,
  BadPartition,
  InvalidFamily,
  ArityCapExceeded,
  CapExceeded,
  Unsaturated,
  UnsupportedDomain,
  Parse,
  Usage,
};

std::string_view to_string(ErrorKind kind);

/// Every library failure is reported as an Error carrying a kind, so callers
/// (notably the CLI) can map it to an exit status without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace spreclone
