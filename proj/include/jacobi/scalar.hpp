#pragma once

#include <complex>
#include <optional>
#include <string>
#include <type_traits>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_complex.hpp>

#include "jacobi/gauss_rational.hpp"

namespace jacobi {

// Two scalar backends share every algorithm:
//   Complex - floating complex carried at 113-bit binary precision; all
//             external I/O is double precision.
//   Exact   - Gaussian rationals; every operation is exact.
using Real = boost::multiprecision::cpp_bin_float_quad;
using Complex = boost::multiprecision::cpp_complex_quad;
using Exact = GaussRational;

template <class T>
inline constexpr bool is_exact_v = std::is_same_v<T, Exact>;

template <class T>
concept ScalarType = std::is_same_v<T, Complex> || std::is_same_v<T, Exact>;

/// Unit roundoff of the float backend's working precision.
inline const Real& working_epsilon() {
  static const Real eps = std::numeric_limits<Real>::epsilon();
  return eps;
}

// ---- uniform scalar helpers ------------------------------------------------

inline double magnitude(const Complex& z) { return static_cast<double>(abs(z)); }
inline double magnitude(const Exact& z) {
  return std::sqrt(mpq_class(z.norm()).get_d());
}

inline bool is_zero(const Complex& z) { return z.real() == 0 && z.imag() == 0; }
inline bool is_zero(const Exact& z) { return z.is_zero(); }

inline bool is_real(const Complex& z) { return z.imag() == 0; }
inline bool is_real(const Exact& z) { return z.is_real(); }

inline std::complex<double> to_std(const Complex& z) {
  return {static_cast<double>(z.real()), static_cast<double>(z.imag())};
}
inline std::complex<double> to_std(const Exact& z) { return z.to_complex(); }

template <ScalarType T>
T from_std(std::complex<double> z) {
  if constexpr (is_exact_v<T>) {
    return Exact::from_double(z.real(), z.imag());
  } else {
    return Complex(z.real(), z.imag());
  }
}

/// Real part as a scalar of the same backend.
inline Complex real_part(const Complex& z) { return Complex(z.real(), Real(0)); }
inline Exact real_part(const Exact& z) { return Exact(z.real()); }

/// Ordering by (real part, imaginary part).
inline bool lex_less(const Complex& a, const Complex& b) {
  if (a.real() != b.real()) return a.real() < b.real();
  return a.imag() < b.imag();
}
inline bool lex_less(const Exact& a, const Exact& b) {
  if (a.real() != b.real()) return a.real() < b.real();
  return a.imag() < b.imag();
}

/// True when z lies on the branch used for square roots: argument in
/// [0, pi), i.e. Im z > 0, or Im z == 0 and Re z >= 0.
inline bool on_sqrt_branch(const Complex& z) {
  return z.imag() > 0 || (z.imag() == 0 && z.real() >= 0);
}
inline bool on_sqrt_branch(const Exact& z) {
  return sgn(z.imag()) > 0 || (sgn(z.imag()) == 0 && sgn(z.real()) >= 0);
}

/// Square root whose value has argument in [0, pi). Always exists for
/// Complex; for Exact only when the argument is the square of a Gaussian
/// rational.
std::optional<Complex> branch_sqrt(const Complex& z);
std::optional<Exact> branch_sqrt(const Exact& z);

std::string to_string(const Complex& z);
std::string to_string(const Exact& z);

}  // namespace jacobi
