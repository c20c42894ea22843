#include "jacobi/gauss_rational.hpp"

#include <cctype>
#include <cmath>
#include <string>

#include "jacobi/error.hpp"

namespace jacobi {

namespace {

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

mpz_class parse_integer(const std::string& s) {
  if (s.empty()) fail(ErrorKind::Parse, "empty integer");
  std::size_t i = (s[0] == '+' || s[0] == '-') ? 1 : 0;
  if (i == s.size()) fail(ErrorKind::Parse, "bad integer '" + s + "'");
  for (std::size_t j = i; j < s.size(); ++j)
    if (!std::isdigit(static_cast<unsigned char>(s[j]))) fail(ErrorKind::Parse, "bad integer '" + s + "'");
  return mpz_class(s[0] == '+' ? s.substr(1) : s, 10);
}

mpq_class parse_decimal(const std::string& s) {
  std::size_t i = 0;
  bool negative = false;
  if (i < s.size() && (s[i] == '+' || s[i] == '-')) negative = s[i++] == '-';
  std::string digits;
  long frac_digits = 0;
  bool seen_point = false, seen_digit = false;
  for (; i < s.size(); ++i) {
    const char c = s[i];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      digits += c;
      seen_digit = true;
      if (seen_point) ++frac_digits;
    } else if (c == '.' && !seen_point) {
      seen_point = true;
    } else {
      break;
    }
  }
  if (!seen_digit) fail(ErrorKind::Parse, "bad number '" + s + "'");
  long exponent = 0;
  if (i < s.size()) {
    if (s[i] != 'e' && s[i] != 'E') fail(ErrorKind::Parse, "bad number '" + s + "'");
    const std::string exp_text = s.substr(i + 1);
    try {
      std::size_t used = 0;
      exponent = std::stol(exp_text, &used);
      if (used != exp_text.size()) fail(ErrorKind::Parse, "bad exponent in '" + s + "'");
    } catch (const std::logic_error&) {
      fail(ErrorKind::Parse, "bad exponent in '" + s + "'");
    }
  }
  mpz_class mantissa(digits, 10);
  if (negative) mantissa = -mantissa;
  const long shift = exponent - frac_digits;
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(shift)));
  mpq_class q = shift >= 0 ? mpq_class(mantissa * scale) : mpq_class(mantissa, scale);
  q.canonicalize();
  return q;
}

}  // namespace

GaussRational::GaussRational(mpq_class re, mpq_class im) : re_(std::move(re)), im_(std::move(im)) {
  re_.canonicalize();
  im_.canonicalize();
}

GaussRational GaussRational::from_double(double re, double im) {
  if (!std::isfinite(re) || !std::isfinite(im)) fail(ErrorKind::Parse, "non-finite value");
  return {mpq_class(re), mpq_class(im)};
}

mpq_class GaussRational::parse_rational(std::string_view text) {
  const std::string s = trim(text);
  if (s.empty()) fail(ErrorKind::Parse, "empty rational");
  if (const auto slash = s.find('/'); slash != std::string::npos) {
    const mpz_class num = parse_integer(trim(s.substr(0, slash)));
    const mpz_class den = parse_integer(trim(s.substr(slash + 1)));
    if (den == 0) fail(ErrorKind::Parse, "zero denominator in '" + s + "'");
    mpq_class q(num, den);
    q.canonicalize();
    return q;
  }
  return parse_decimal(s);
}

GaussRational& GaussRational::operator+=(const GaussRational& o) {
  re_ += o.re_;
  im_ += o.im_;
  return *this;
}

GaussRational& GaussRational::operator-=(const GaussRational& o) {
  re_ -= o.re_;
  im_ -= o.im_;
  return *this;
}

GaussRational& GaussRational::operator*=(const GaussRational& o) {
  mpq_class re = re_ * o.re_ - im_ * o.im_;
  mpq_class im = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

GaussRational& GaussRational::operator/=(const GaussRational& o) {
  const mpq_class den = o.norm();
  if (sgn(den) == 0) fail(ErrorKind::InvalidArgument, "division by zero");
  mpq_class re = (re_ * o.re_ + im_ * o.im_) / den;
  mpq_class im = (im_ * o.re_ - re_ * o.im_) / den;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

std::ostream& operator<<(std::ostream& os, const GaussRational& z) {
  os << z.re_.get_str();
  if (sgn(z.im_) != 0) os << (sgn(z.im_) > 0 ? " + " : " - ") << mpq_class(abs(z.im_)).get_str() << "i";
  return os;
}

std::optional<mpq_class> rational_sqrt(const mpq_class& q) {
  if (sgn(q) < 0) return std::nullopt;
  if (!mpz_perfect_square_p(q.get_num_mpz_t()) || !mpz_perfect_square_p(q.get_den_mpz_t())) return std::nullopt;
  mpz_class num, den;
  mpz_sqrt(num.get_mpz_t(), q.get_num_mpz_t());
  mpz_sqrt(den.get_mpz_t(), q.get_den_mpz_t());
  mpq_class r(num, den);
  r.canonicalize();
  return r;
}

mpq_class rationalize(double x, double rel_tol, std::int64_t max_den) {
  if (!std::isfinite(x)) fail(ErrorKind::InvalidArgument, "cannot rationalize a non-finite value");
  const mpq_class target(x);
  mpz_class h_prev(1), h(static_cast<long>(std::floor(x)));
  mpz_class k_prev(0), k(1);
  mpq_class rem = target - mpq_class(h);
  const double bound = rel_tol * std::max(1.0, std::fabs(x));
  for (int iter = 0; iter < 64; ++iter) {
    const mpq_class approx(h, k);
    if (std::fabs(mpq_class(approx - target).get_d()) <= bound) break;
    if (sgn(rem) == 0) break;
    const mpq_class inv = 1 / rem;
    mpz_class a;
    mpz_fdiv_q(a.get_mpz_t(), inv.get_num_mpz_t(), inv.get_den_mpz_t());
    rem = inv - mpq_class(a);
    mpz_class h_next = a * h + h_prev;
    mpz_class k_next = a * k + k_prev;
    if (k_next > max_den) break;
    h_prev = h;
    h = h_next;
    k_prev = k;
    k = k_next;
  }
  mpq_class r(h, k);
  r.canonicalize();
  return r;
}

}  // namespace jacobi
