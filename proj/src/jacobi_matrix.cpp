#include "jacobi/jacobi_matrix.hpp"

#include "jacobi/error.hpp"
#include "jacobi/spectral.hpp"

namespace jacobi {

template <ScalarType T>
bool JacobiMatrix<T>::is_real() const {
  for (const auto& x : diag_)
    if (!jacobi::is_real(x)) return false;
  for (const auto& x : off_)
    if (!jacobi::is_real(x)) return false;
  return true;
}

template <ScalarType T>
JacobiMatrix<T> make_jacobi(std::vector<T> diag, std::vector<T> off) {
  if (diag.empty()) fail(ErrorKind::SizeMismatch, "matrix must have at least one diagonal entry");
  if (off.size() + 1 != diag.size())
    fail(ErrorKind::SizeMismatch, "expected " + std::to_string(diag.size() - 1) + " off-diagonal entries, got " +
                                      std::to_string(off.size()));
  for (std::size_t n = 0; n < off.size(); ++n)
    if (is_zero(off[n])) fail(ErrorKind::ZeroOffDiagonal, "a_" + std::to_string(n) + " = 0");
  return JacobiMatrix<T>(std::move(diag), std::move(off));
}

template <ScalarType T>
PolynomialPair<T> recurrence_polys(const JacobiMatrix<T>& J) {
  const long N = static_cast<long>(J.size());
  PolynomialPair<T> out;
  out.first_kind = {Polynomial<T>{}, Polynomial<T>::constant(T(1))};
  out.second_kind = {Polynomial<T>::constant(T(-1)), Polynomial<T>{}};
  const Polynomial<T> lambda = Polynomial<T>::monomial(T(1), 1);
  auto step = [&](std::vector<Polynomial<T>>& y, long n) {
    const auto& cur = y[static_cast<std::size_t>(n + 1)];
    const auto& prev = y[static_cast<std::size_t>(n)];
    Polynomial<T> next = lambda * cur - J.diag()[static_cast<std::size_t>(n)] * cur - J.boundary_off(n - 1) * prev;
    const T inv = T(1) / J.boundary_off(n);
    y.push_back(next * inv);
  };
  for (long n = 0; n < N; ++n) {
    step(out.first_kind, n);
    step(out.second_kind, n);
  }
  return out;
}

template <ScalarType T>
RecurrenceValues<T> recurrence_values(const JacobiMatrix<T>& J, const T& z) {
  const long N = static_cast<long>(J.size());
  RecurrenceValues<T> v;
  v.P = {T(0), T(1)};
  v.Q = {T(-1), T(0)};
  v.dP = {T(0), T(0)};
  for (long n = 0; n < N; ++n) {
    const auto i = static_cast<std::size_t>(n + 1);
    const T shift = z - J.diag()[static_cast<std::size_t>(n)];
    const T a_prev = J.boundary_off(n - 1);
    const T a = J.boundary_off(n);
    v.P.push_back((shift * v.P[i] - a_prev * v.P[i - 1]) / a);
    v.Q.push_back((shift * v.Q[i] - a_prev * v.Q[i - 1]) / a);
    v.dP.push_back((shift * v.dP[i] + v.P[i] - a_prev * v.dP[i - 1]) / a);
  }
  return v;
}

template <ScalarType T>
Polynomial<T> char_poly(const JacobiMatrix<T>& J) {
  const auto pp = recurrence_polys(J);
  T scale = J.size() % 2 == 0 ? T(1) : T(-1);
  for (const auto& a : J.off()) scale *= a;
  return pp.P(static_cast<long>(J.size())) * scale;
}

namespace {

template <ScalarType T>
void check_pole(const JacobiMatrix<T>& J, const T& pn, const T& z, double pole_tol) {
  if constexpr (is_exact_v<T>) {
    (void)J;
    (void)pole_tol;
    if (pn.is_zero()) fail(ErrorKind::EigenvaluePole, "z = " + to_string(z) + " is an eigenvalue");
  } else {
    // Scale of P_N near z: the same recurrence run on magnitudes.
    double prev = 0.0, cur = 1.0;
    const double az = magnitude(z);
    for (std::size_t n = 0; n < J.size(); ++n) {
      const double next = ((az + magnitude(J.diag()[n])) * cur +
                           magnitude(J.boundary_off(static_cast<long>(n) - 1)) * prev) /
                          magnitude(J.boundary_off(static_cast<long>(n)));
      prev = cur;
      cur = next;
    }
    if (magnitude(pn) <= pole_tol * cur)
      fail(ErrorKind::EigenvaluePole, "z = " + to_string(z) + " is (numerically) an eigenvalue");
  }
}

}  // namespace

template <ScalarType T>
T weyl_function(const JacobiMatrix<T>& J, const T& z, double pole_tol) {
  const auto v = recurrence_values(J, z);
  const long N = static_cast<long>(J.size());
  check_pole(J, v.p(N), z, pole_tol);
  return -v.q(N) / v.p(N);
}

template <ScalarType T>
T resolvent_entry(const JacobiMatrix<T>& J, std::size_t n, std::size_t m, const T& z, double pole_tol) {
  if (n >= J.size() || m >= J.size()) fail(ErrorKind::InvalidArgument, "resolvent index out of range");
  const auto v = recurrence_values(J, z);
  const long N = static_cast<long>(J.size());
  check_pole(J, v.p(N), z, pole_tol);
  const T M = -v.q(N) / v.p(N);
  const long lo = static_cast<long>(std::min(n, m));
  const long hi = static_cast<long>(std::max(n, m));
  return v.p(lo) * (v.q(hi) + M * v.p(hi));
}

template <ScalarType T>
JacobiMatrix<T> truncate(const JacobiMatrix<T>& J) {
  if (J.size() < 2) fail(ErrorKind::TooSmall, "cannot truncate a 1x1 matrix");
  std::vector<T> diag(J.diag().begin() + 1, J.diag().end());
  std::vector<T> off(J.off().begin() + 1, J.off().end());
  return make_jacobi(std::move(diag), std::move(off));
}

template <ScalarType T>
MomentSequence<T> moment_oracle(const JacobiMatrix<T>& J) {
  const std::size_t N = J.size();
  const auto& b = J.diag();
  const auto& a = J.off();
  std::vector<T> v(N, T(0));
  v[0] = T(1);
  std::vector<T> s;
  s.reserve(2 * N + 1);
  s.push_back(T(1));
  for (std::size_t l = 1; l <= 2 * N; ++l) {
    std::vector<T> w(N, T(0));
    for (std::size_t i = 0; i < N; ++i) {
      T acc = b[i] * v[i];
      if (i > 0) acc += a[i - 1] * v[i - 1];
      if (i + 1 < N) acc += a[i] * v[i + 1];
      w[i] = std::move(acc);
    }
    v = std::move(w);
    s.push_back(v[0]);
  }
  return MomentSequence<T>(std::move(s));
}

#define JACOBI_INSTANTIATE(T)                                                                     \
  template class JacobiMatrix<T>;                                                                 \
  template JacobiMatrix<T> make_jacobi<T>(std::vector<T>, std::vector<T>);                        \
  template PolynomialPair<T> recurrence_polys<T>(const JacobiMatrix<T>&);                         \
  template RecurrenceValues<T> recurrence_values<T>(const JacobiMatrix<T>&, const T&);            \
  template Polynomial<T> char_poly<T>(const JacobiMatrix<T>&);                                    \
  template T weyl_function<T>(const JacobiMatrix<T>&, const T&, double);                          \
  template T resolvent_entry<T>(const JacobiMatrix<T>&, std::size_t, std::size_t, const T&, double); \
  template JacobiMatrix<T> truncate<T>(const JacobiMatrix<T>&);                                   \
  template MomentSequence<T> moment_oracle<T>(const JacobiMatrix<T>&);

JACOBI_INSTANTIATE(Complex)
JACOBI_INSTANTIATE(Exact)

}  // namespace jacobi
