#pragma once

#include <cstddef>
#include <optional>
#include <variant>
#include <vector>

#include "jacobi/jacobi_matrix.hpp"

namespace jacobi {

/// Power moments s_0..s_{2N} of a functional on polynomials of degree <= 2N.
template <ScalarType T>
class MomentSequence {
 public:
  /// Throws SizeMismatch unless the length is odd and at least 3.
  explicit MomentSequence(std::vector<T> s);

  /// N, where the sequence holds 2N + 1 moments.
  std::size_t size() const { return (s_.size() - 1) / 2; }
  const std::vector<T>& values() const { return s_; }
  const T& operator[](std::size_t l) const { return s_[l]; }

 private:
  std::vector<T> s_;
};

/// Eigenvalue lambda_k with its normalizing chain beta_k1..beta_km (beta_k1
/// first). The chain length is the multiplicity.
template <ScalarType T>
struct SpectralEntry {
  T lambda;
  std::vector<T> chain;
};

template <ScalarType T>
class SpectralData {
 public:
  /// Throws InvalidArgument on an empty entry list or an empty chain.
  /// Distinctness and the normalization sum are checked by validate().
  explicit SpectralData(std::vector<SpectralEntry<T>> entries);

  const std::vector<SpectralEntry<T>>& entries() const { return entries_; }
  /// N = sum of multiplicities.
  std::size_t size() const;
  /// sum_k beta_k1
  T first_chain_sum() const;

 private:
  std::vector<SpectralEntry<T>> entries_;
};

/// A linear functional on polynomials of degree <= 2N, given either by its
/// moments or by spectral data.
template <ScalarType T>
class Functional {
 public:
  explicit Functional(MomentSequence<T> ms) : rep_(std::move(ms)) {}
  explicit Functional(SpectralData<T> sd) : rep_(std::move(sd)) {}

  std::size_t size() const;
  /// Moments; derived from spectral data when that is the representation.
  MomentSequence<T> moments() const;
  const SpectralData<T>* spectral_data() const { return std::get_if<SpectralData<T>>(&rep_); }
  const MomentSequence<T>* moment_sequence() const { return std::get_if<MomentSequence<T>>(&rep_); }

 private:
  std::variant<MomentSequence<T>, SpectralData<T>> rep_;
};

template <ScalarType T>
struct ForwardResult {
  SpectralData<T> data;
  /// 1-norm condition number of the partial-fraction system.
  double condition = 1.0;
  /// Set when condition > 1 / tol.
  bool ill_conditioned = false;
};

/// Eigenvalues (clustered roots of P_N, sorted by real then imaginary part)
/// and normalizing chains from the partial fractions of Q_N / P_N. The exact
/// backend throws ExactRootingUnavailable when P_N has a root that is not a
/// Gaussian rational.
template <ScalarType T>
ForwardResult<T> forward_spectral_data(const JacobiMatrix<T>& J, double tol = 1e-8);

/// s_l = sum_k sum_{j <= min(m_k, l+1)} C(l, j-1) beta_kj lambda_k^(l-j+1).
template <ScalarType T>
MomentSequence<T> moments_from_spectral_data(const SpectralData<T>& sd);

/// <Omega, G>. Throws DegreeTooHigh if deg G > 2N.
template <ScalarType T>
T evaluate_functional(const Functional<T>& f, const Polynomial<T>& G);

/// beta_k = 1 / sum_n P_n(lambda_k)^2 for a real matrix. Throws NotReal on
/// complex entries.
template <ScalarType T>
SpectralData<T> real_normalizing_numbers(const JacobiMatrix<T>& J, double tol = 1e-8);

/// F(lambda) = sum_m f_m P_m(lambda).
template <ScalarType T>
Polynomial<T> finite_transform(const JacobiMatrix<T>& J, const std::vector<T>& f);

/// f_n = <Omega, F P_n>. Throws DegreeTooHigh if deg F > N - 1.
template <ScalarType T>
std::vector<T> inverse_transform(const JacobiMatrix<T>& J, const Polynomial<T>& F);

/// Sorts entries by (real, imaginary) part of the eigenvalue.
template <ScalarType T>
SpectralData<T> canonical_order(SpectralData<T> sd);

}  // namespace jacobi
