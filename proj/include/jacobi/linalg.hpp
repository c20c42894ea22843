#pragma once

#include <cstddef>
#include <vector>

#include "jacobi/scalar.hpp"

namespace jacobi {

/// Small dense row-major matrix; only what the Hankel and partial-fraction
/// solves need.
template <ScalarType T>
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, T(0)) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

/// Determinant. Float: LU with partial pivoting, product of the pivots.
/// Exact: fraction-free Bareiss elimination with row exchange on zero pivots.
Complex determinant(DenseMatrix<Complex> a);
Exact determinant(DenseMatrix<Exact> a);

struct SolveInfo {
  /// 1-norm condition number (float backend; 1 for exact solves).
  double condition = 1.0;
  bool singular = false;
};

/// Solves a x = b for square a. Float: LU with partial pivoting and an
/// explicit 1-norm condition number. Exact: Bareiss elimination followed by
/// exact back substitution. On a singular matrix info.singular is set and the
/// returned vector is empty.
std::vector<Complex> solve(const DenseMatrix<Complex>& a, const std::vector<Complex>& b,
                           SolveInfo* info = nullptr);
std::vector<Exact> solve(const DenseMatrix<Exact>& a, const std::vector<Exact>& b, SolveInfo* info = nullptr);

}  // namespace jacobi
