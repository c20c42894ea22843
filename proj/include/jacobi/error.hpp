#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace jacobi {

enum class ErrorKind {
  InvalidArgument,
  SizeMismatch,
  ZeroOffDiagonal,
  TooSmall,
  DegreeTooHigh,
  NotReal,
  SizeCap,
  Parse,
  ValidationFailed,
  NonConvergence,
  ExactRootingUnavailable,
  EigenvaluePole,
  SingularLeadingMinor,
  BranchInconsistency,
};

std::string_view to_string(ErrorKind kind);

/// True for failures caused by the input (bad shape, failed validity test),
/// false for failures of the numerical machinery itself.
bool is_input_error(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

}  // namespace jacobi
