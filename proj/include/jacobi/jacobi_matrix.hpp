#pragma once

#include <cstddef>
#include <vector>

#include "jacobi/polynomial.hpp"

namespace jacobi {

template <ScalarType T>
class MomentSequence;

/// Complex symmetric tridiagonal matrix with nonzero off-diagonal:
/// diagonal b_0..b_{N-1}, off-diagonal a_0..a_{N-2}. Construct through
/// make_jacobi, which enforces the invariants.
template <ScalarType T>
class JacobiMatrix {
 public:
  std::size_t size() const { return diag_.size(); }
  const std::vector<T>& diag() const { return diag_; }
  const std::vector<T>& off() const { return off_; }

  /// Off-diagonal with the boundary convention a_{-1} = a_{N-1} = 1 used by
  /// the three-term recurrence; n ranges over -1..N-1.
  T boundary_off(long n) const {
    if (n < 0 || n >= static_cast<long>(off_.size())) return T(1);
    return off_[static_cast<std::size_t>(n)];
  }

  bool is_real() const;

  template <ScalarType U>
  friend JacobiMatrix<U> make_jacobi(std::vector<U> diag, std::vector<U> off);

 private:
  JacobiMatrix(std::vector<T> diag, std::vector<T> off) : diag_(std::move(diag)), off_(std::move(off)) {}

  std::vector<T> diag_;
  std::vector<T> off_;
};

/// Throws SizeMismatch (empty diagonal or |off| != |diag| - 1) or
/// ZeroOffDiagonal.
template <ScalarType T>
JacobiMatrix<T> make_jacobi(std::vector<T> diag, std::vector<T> off);

/// First-kind P_{-1..N} and second-kind Q_{-1..N} polynomials of the
/// recurrence a_{n-1} y_{n-1} + b_n y_n + a_n y_{n+1} = lambda y_n.
template <ScalarType T>
struct PolynomialPair {
  std::vector<Polynomial<T>> first_kind;   // index n + 1 holds P_n
  std::vector<Polynomial<T>> second_kind;  // index n + 1 holds Q_n

  const Polynomial<T>& P(long n) const { return first_kind[static_cast<std::size_t>(n + 1)]; }
  const Polynomial<T>& Q(long n) const { return second_kind[static_cast<std::size_t>(n + 1)]; }
};

template <ScalarType T>
PolynomialPair<T> recurrence_polys(const JacobiMatrix<T>& J);

/// Pointwise values of the recurrence at a single z, computed without forming
/// coefficients. Index n + 1 holds the value for n = -1..N.
template <ScalarType T>
struct RecurrenceValues {
  std::vector<T> P;
  std::vector<T> Q;
  std::vector<T> dP;  // derivative of P_n with respect to lambda

  const T& p(long n) const { return P[static_cast<std::size_t>(n + 1)]; }
  const T& q(long n) const { return Q[static_cast<std::size_t>(n + 1)]; }
  const T& dp(long n) const { return dP[static_cast<std::size_t>(n + 1)]; }
};

template <ScalarType T>
RecurrenceValues<T> recurrence_values(const JacobiMatrix<T>& J, const T& z);

/// det(J - lambda I) = (-1)^N a_0 ... a_{N-2} P_N(lambda).
template <ScalarType T>
Polynomial<T> char_poly(const JacobiMatrix<T>& J);

/// Weyl function M(z) = -Q_N(z) / P_N(z). Throws EigenvaluePole when P_N(z)
/// vanishes (exactly for Exact; below pole_tol times its Horner scale for
/// Complex).
template <ScalarType T>
T weyl_function(const JacobiMatrix<T>& J, const T& z, double pole_tol = 1e-14);

/// Entry (n, m) of (J - zI)^{-1} from the product formula
/// P_min(z) [Q_max(z) + M(z) P_max(z)].
template <ScalarType T>
T resolvent_entry(const JacobiMatrix<T>& J, std::size_t n, std::size_t m, const T& z,
                  double pole_tol = 1e-14);

/// Deletes the first row and column. Throws TooSmall for N = 1.
template <ScalarType T>
JacobiMatrix<T> truncate(const JacobiMatrix<T>& J);

/// Power moments s_l = (J^l)_{00}, l = 0..2N, under the bilinear pairing.
template <ScalarType T>
MomentSequence<T> moment_oracle(const JacobiMatrix<T>& J);

}  // namespace jacobi
