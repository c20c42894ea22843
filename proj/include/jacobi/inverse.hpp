#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "jacobi/spectral.hpp"

namespace jacobi {

enum class CheckMode { Complex, Real };

struct Verdict {
  enum class Kind { ComplexValid, RealValid, Invalid };
  Kind kind = Kind::Invalid;
  /// Human-readable description of the failed condition; empty when valid.
  std::string reason;

  bool valid() const { return kind != Kind::Invalid; }
};

std::string_view to_string(Verdict::Kind kind);

/// Hankel determinants of a moment sequence and the validity verdict.
template <ScalarType T>
struct HankelReport {
  std::vector<T> D;      // index n + 1 holds D_n, n = -1..N
  std::vector<T> Delta;  // index n + 1 holds Delta_n, n = -1..N-1
  /// Float backend: |D_n / D_{n-1}| relative to the magnitude of the terms
  /// it was computed from, n = 1..N (index n - 1). Values near the working
  /// precision mean D_n is numerically zero. Empty for Exact.
  std::vector<double> pivot_ratio;
  Verdict verdict;
  /// Some D_n (n < N) is nonzero but its pivot ratio is below tol.
  bool ill_conditioned = false;

  const T& d(long n) const { return D[static_cast<std::size_t>(n + 1)]; }
  const T& delta(long n) const { return Delta[static_cast<std::size_t>(n + 1)]; }
};

template <ScalarType T>
HankelReport<T> hankel_report(const MomentSequence<T>& ms, CheckMode mode, double tol = 1e-8);

/// Complex mode: normalization, then the Hankel test. Real mode on spectral
/// data: real distinct eigenvalues, simple chains, positive weights summing
/// to one. Real mode on moments: real moments and positive D_n.
template <ScalarType T>
Verdict validate(const Functional<T>& f, CheckMode mode, double tol = 1e-8);

/// Row chi_{n0}..chi_{n,n-1} of the fundamental equation
/// s_{n+m} + sum_k chi_nk s_{k+m} = 0, m = 0..n-1, for 1 <= n <= N.
/// Throws SingularLeadingMinor when D_{n-1} vanishes.
template <ScalarType T>
std::vector<T> solve_fundamental(const MomentSequence<T>& ms, std::size_t n);

/// The same row by Cramer's rule: chi_nk = -D_{n-1}^{(k)} / D_{n-1}.
template <ScalarType T>
std::vector<T> solve_fundamental_cramer(const MomentSequence<T>& ms, std::size_t n);

/// sigma_1..sigma_{N-1}; sigma_{n+1} multiplies a_n.
class SignSequence {
 public:
  SignSequence() = default;
  explicit SignSequence(std::vector<int> signs);

  static SignSequence all_plus(std::size_t n_minus_1) { return SignSequence(std::vector<int>(n_minus_1, 1)); }
  /// Parses a string over {+, -} (the Unicode minus sign is accepted).
  static SignSequence parse(std::string_view text);

  std::size_t size() const { return signs_.size(); }
  int operator[](std::size_t i) const { return signs_[i]; }
  const std::vector<int>& values() const { return signs_; }
  std::string str() const;

  friend bool operator==(const SignSequence&, const SignSequence&) = default;

 private:
  std::vector<int> signs_;
};

/// Signs relative to the square-root branch, so that reconstructing the
/// matrix's own moments with them returns its off-diagonal.
template <ScalarType T>
SignSequence matching_signs(const JacobiMatrix<T>& J);

/// Intermediate quantities of the monic-coefficient route.
template <ScalarType T>
struct ReconstructionState {
  /// chi[n] holds chi_{n0}..chi_{n,n-1}, n = 0..N (chi[0] empty).
  std::vector<std::vector<T>> chi;
  /// alpha_n^{-2} = s_{2n} + sum_k chi_nk s_{k+n}, n = 0..N-1.
  std::vector<T> inv_alpha_sq;
};

template <ScalarType T>
struct Reconstruction {
  /// Entries independent of the sign choice.
  std::vector<T> diag;
  std::vector<T> off_squared;
  ReconstructionState<T> state;
  bool ill_conditioned = false;
};

struct ReconstructOptions {
  double tol = 1e-8;
  /// Largest N - 1 that reconstruct_all will enumerate.
  std::size_t enumeration_cap = 16;
};

/// b_n and a_n^2 from the determinant formulas, cross-checked against the
/// chi/alpha route. Throws ValidationFailed or BranchInconsistency.
template <ScalarType T>
Reconstruction<T> reconstruct_squares(const Functional<T>& f, const ReconstructOptions& opts = {});

/// a_n = sigma_{n+1} sqrt(D_{n-1} D_{n+1}) / D_n with the square root taken
/// on the branch arg in [0, pi); b_n = Delta_n / D_n - Delta_{n-1} / D_{n-1}.
/// Exact backend throws ExactRootingUnavailable when some a_n is not a
/// Gaussian rational.
template <ScalarType T>
JacobiMatrix<T> reconstruct(const Functional<T>& f, const SignSequence& signs,
                            const ReconstructOptions& opts = {});

/// Applies the signs to precomputed squares.
template <ScalarType T>
JacobiMatrix<T> apply_signs(const Reconstruction<T>& r, const SignSequence& signs);

/// All 2^{N-1} matrices sharing the functional, sign sequences in
/// lexicographic order with '+' before '-'. Throws SizeCap past the cap.
template <ScalarType T>
std::vector<JacobiMatrix<T>> reconstruct_all(const Functional<T>& f, const ReconstructOptions& opts = {});

/// Real matrix with prescribed real simple eigenvalues and positive
/// normalizing numbers. Throws ValidationFailed if the data are not valid
/// real spectral data.
template <ScalarType T>
JacobiMatrix<T> reconstruct_real(const SpectralData<T>& sd, const SignSequence& signs,
                                 const ReconstructOptions& opts = {});

}  // namespace jacobi
