#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace jacobi {

/// Exact complex number p/q + i r/s with arbitrary-precision rationals,
/// always kept in lowest terms.
class GaussRational {
 public:
  GaussRational() = default;
  GaussRational(long re) : re_(re) {}  // NOLINT(google-explicit-constructor)
  GaussRational(mpq_class re, mpq_class im);
  explicit GaussRational(mpq_class re) : re_(std::move(re)) { re_.canonicalize(); }

  /// Exact binary value of the doubles, no rounding.
  static GaussRational from_double(double re, double im = 0.0);

  /// Parses "p", "p/q", "-p/q" or a decimal literal such as "0.25" or
  /// "1e-3" (converted exactly from its decimal digits).
  static mpq_class parse_rational(std::string_view text);

  const mpq_class& real() const { return re_; }
  const mpq_class& imag() const { return im_; }

  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  bool is_real() const { return sgn(im_) == 0; }

  GaussRational conj() const { return {re_, -im_}; }
  /// |z|^2, exact.
  mpq_class norm() const { return re_ * re_ + im_ * im_; }

  std::complex<double> to_complex() const { return {re_.get_d(), im_.get_d()}; }

  GaussRational& operator+=(const GaussRational& o);
  GaussRational& operator-=(const GaussRational& o);
  GaussRational& operator*=(const GaussRational& o);
  GaussRational& operator/=(const GaussRational& o);

  friend GaussRational operator+(GaussRational a, const GaussRational& b) { return a += b; }
  friend GaussRational operator-(GaussRational a, const GaussRational& b) { return a -= b; }
  friend GaussRational operator*(GaussRational a, const GaussRational& b) { return a *= b; }
  friend GaussRational operator/(GaussRational a, const GaussRational& b) { return a /= b; }
  friend GaussRational operator-(const GaussRational& a) { return {-a.re_, -a.im_}; }

  friend bool operator==(const GaussRational& a, const GaussRational& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }

  friend std::ostream& operator<<(std::ostream& os, const GaussRational& z);

 private:
  mpq_class re_{0};
  mpq_class im_{0};
};

/// Square root of a non-negative rational if it is the square of a rational.
std::optional<mpq_class> rational_sqrt(const mpq_class& q);

/// Best rational approximation by continued fractions, stopping once the
/// approximation is within rel_tol of x or the denominator exceeds max_den.
mpq_class rationalize(double x, double rel_tol, std::int64_t max_den);

}  // namespace jacobi
