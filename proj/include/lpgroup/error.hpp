#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace lpgroup {

enum class ErrorKind {
  InvalidArgument,
  Budget,
  MismatchedAlgebras,
  NotUnimodular,
  NotIsometry,
  P2Unsupported,
  POutOfRange,
  NotGeneralizedPermutation,
  NotNonnegative,
  NotGroupLike,
  NotRightInvariant,
  Malformed,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the library carries a kind so that callers (the
/// CLI in particular) can map it onto a verdict or exit code.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace lpgroup
