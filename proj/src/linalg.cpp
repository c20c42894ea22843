#include "jacobi/linalg.hpp"

#include <cmath>
#include <utility>

#include "jacobi/error.hpp"

namespace jacobi {

namespace {

struct LuFactors {
  DenseMatrix<Complex> lu;
  std::vector<std::size_t> perm;
  int sign = 1;
  bool singular = false;
};

// Doolittle LU with partial pivoting; L has unit diagonal and is stored
// below the diagonal of lu.
LuFactors lu_factor(DenseMatrix<Complex> a) {
  const std::size_t n = a.rows();
  LuFactors f{std::move(a), std::vector<std::size_t>(n), 1, false};
  for (std::size_t i = 0; i < n; ++i) f.perm[i] = i;
  auto& m = f.lu;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    Real best = abs(m(k, k));
    for (std::size_t i = k + 1; i < n; ++i) {
      const Real v = abs(m(i, k));
      if (v > best) {
        best = v;
        piv = i;
      }
    }
    if (best == 0) {
      f.singular = true;
      continue;
    }
    if (piv != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(k, j), m(piv, j));
      std::swap(f.perm[k], f.perm[piv]);
      f.sign = -f.sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      const Complex l = m(i, k) / m(k, k);
      m(i, k) = l;
      for (std::size_t j = k + 1; j < n; ++j) m(i, j) -= l * m(k, j);
    }
  }
  return f;
}

std::vector<Complex> lu_solve(const LuFactors& f, const std::vector<Complex>& b) {
  const std::size_t n = f.lu.rows();
  std::vector<Complex> x(n);
  for (std::size_t i = 0; i < n; ++i) {
    Complex acc = b[f.perm[i]];
    for (std::size_t j = 0; j < i; ++j) acc -= f.lu(i, j) * x[j];
    x[i] = acc;
  }
  for (std::size_t i = n; i-- > 0;) {
    Complex acc = x[i];
    for (std::size_t j = i + 1; j < n; ++j) acc -= f.lu(i, j) * x[j];
    x[i] = acc / f.lu(i, i);
  }
  return x;
}

double one_norm(const DenseMatrix<Complex>& a) {
  double best = 0.0;
  for (std::size_t j = 0; j < a.cols(); ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i) s += magnitude(a(i, j));
    best = std::max(best, s);
  }
  return best;
}

// Fraction-free elimination of the augmented system in place. Returns the
// determinant of the leading square block (sign-corrected for swaps).
Exact bareiss_eliminate(DenseMatrix<Exact>& m, std::size_t n) {
  Exact prev(1);
  int sign = 1;
  for (std::size_t k = 0; k < n; ++k) {
    if (m(k, k).is_zero()) {
      std::size_t piv = k + 1;
      while (piv < n && m(piv, k).is_zero()) ++piv;
      if (piv == n) return Exact(0);
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(k, j), m(piv, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < m.cols(); ++j)
        m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
      m(i, k) = Exact(0);
    }
    prev = m(k, k);
  }
  return sign > 0 ? prev : -prev;
}

}  // namespace

Complex determinant(DenseMatrix<Complex> a) {
  if (a.rows() != a.cols()) fail(ErrorKind::SizeMismatch, "determinant of a non-square matrix");
  if (a.rows() == 0) return Complex(1);
  const auto f = lu_factor(std::move(a));
  if (f.singular) return Complex(0);
  Complex d(f.sign);
  for (std::size_t i = 0; i < f.lu.rows(); ++i) d *= f.lu(i, i);
  return d;
}

Exact determinant(DenseMatrix<Exact> a) {
  if (a.rows() != a.cols()) fail(ErrorKind::SizeMismatch, "determinant of a non-square matrix");
  if (a.rows() == 0) return Exact(1);
  return bareiss_eliminate(a, a.rows());
}

std::vector<Complex> solve(const DenseMatrix<Complex>& a, const std::vector<Complex>& b, SolveInfo* info) {
  const std::size_t n = a.rows();
  if (a.cols() != n || b.size() != n) fail(ErrorKind::SizeMismatch, "solve: shape mismatch");
  SolveInfo local;
  SolveInfo& out = info ? *info : local;
  const auto f = lu_factor(a);
  out.singular = f.singular;
  if (f.singular) {
    out.condition = std::numeric_limits<double>::infinity();
    return {};
  }
  // Explicit inverse for the 1-norm condition number; sizes here are tiny.
  DenseMatrix<Complex> inv(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<Complex> e(n, Complex(0));
    e[j] = Complex(1);
    const auto col = lu_solve(f, e);
    for (std::size_t i = 0; i < n; ++i) inv(i, j) = col[i];
  }
  out.condition = one_norm(a) * one_norm(inv);
  return lu_solve(f, b);
}

std::vector<Exact> solve(const DenseMatrix<Exact>& a, const std::vector<Exact>& b, SolveInfo* info) {
  const std::size_t n = a.rows();
  if (a.cols() != n || b.size() != n) fail(ErrorKind::SizeMismatch, "solve: shape mismatch");
  SolveInfo local;
  SolveInfo& out = info ? *info : local;
  out.condition = 1.0;
  DenseMatrix<Exact> m(n, n + 1);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) m(i, j) = a(i, j);
    m(i, n) = b[i];
  }
  if (bareiss_eliminate(m, n).is_zero()) {
    out.singular = true;
    return {};
  }
  out.singular = false;
  std::vector<Exact> x(n);
  for (std::size_t i = n; i-- > 0;) {
    Exact acc = m(i, n);
    for (std::size_t j = i + 1; j < n; ++j) acc -= m(i, j) * x[j];
    x[i] = acc / m(i, i);
  }
  return x;
}

}  // namespace jacobi
