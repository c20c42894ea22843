#include "jacobi/scalar.hpp"

#include <cstdio>

#include "jacobi/error.hpp"

namespace jacobi {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::SizeMismatch: return "SizeMismatch";
    case ErrorKind::ZeroOffDiagonal: return "ZeroOffDiagonal";
    case ErrorKind::TooSmall: return "TooSmall";
    case ErrorKind::DegreeTooHigh: return "DegreeTooHigh";
    case ErrorKind::NotReal: return "NotReal";
    case ErrorKind::SizeCap: return "SizeCap";
    case ErrorKind::Parse: return "Parse";
    case ErrorKind::ValidationFailed: return "ValidationFailed";
    case ErrorKind::NonConvergence: return "NonConvergence";
    case ErrorKind::ExactRootingUnavailable: return "ExactRootingUnavailable";
    case ErrorKind::EigenvaluePole: return "EigenvaluePole";
    case ErrorKind::SingularLeadingMinor: return "SingularLeadingMinor";
    case ErrorKind::BranchInconsistency: return "BranchInconsistency";
  }
  return "Unknown";
}

bool is_input_error(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument:
    case ErrorKind::SizeMismatch:
    case ErrorKind::ZeroOffDiagonal:
    case ErrorKind::TooSmall:
    case ErrorKind::DegreeTooHigh:
    case ErrorKind::NotReal:
    case ErrorKind::SizeCap:
    case ErrorKind::Parse:
    case ErrorKind::ValidationFailed:
    case ErrorKind::SingularLeadingMinor:
      return true;
    default:
      return false;
  }
}

std::optional<Complex> branch_sqrt(const Complex& z) {
  Complex w = sqrt(z);
  if (!on_sqrt_branch(w)) w = -w;
  return w;
}

std::optional<Exact> branch_sqrt(const Exact& z) {
  const mpq_class& x = z.real();
  const mpq_class& y = z.imag();
  if (sgn(y) == 0) {
    if (sgn(x) >= 0) {
      auto s = rational_sqrt(x);
      if (!s) return std::nullopt;
      return Exact(*s);
    }
    auto s = rational_sqrt(mpq_class(-x));
    if (!s) return std::nullopt;
    return Exact(mpq_class(0), *s);
  }
  const auto r = rational_sqrt(z.norm());
  if (!r) return std::nullopt;
  const auto u = rational_sqrt(mpq_class((*r + x) / 2));
  const auto v = rational_sqrt(mpq_class((*r - x) / 2));
  if (!u || !v) return std::nullopt;
  Exact w(*u, sgn(y) > 0 ? *v : mpq_class(-*v));
  if (!on_sqrt_branch(w)) w = -w;
  return w;
}

std::string to_string(const Complex& z) {
  const auto c = to_std(z);
  char buf[96];
  std::snprintf(buf, sizeof buf, "(%.17g, %.17g)", c.real(), c.imag());
  return buf;
}

std::string to_string(const Exact& z) {
  return "(" + z.real().get_str() + ", " + z.imag().get_str() + ")";
}

}  // namespace jacobi
