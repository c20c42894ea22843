#pragma once

#include <span>
#include <vector>

#include "jacobi/polynomial.hpp"

namespace jacobi {

template <ScalarType T>
struct RootCluster {
  T center;
  int multiplicity = 0;
  /// Raw roots merged into this cluster (float backend only).
  std::vector<T> members;
};

struct RootOptions {
  /// Clustering radius is tol * max(1, |root|).
  double tol = 1e-8;
  int max_iterations = 500;
  /// Per-root stop once the Newton-type correction is below
  /// step_tol * max(1, |root|).
  double step_tol = 1e-13;
};

/// All roots of p by Aberth-Ehrlich simultaneous iteration, greedily merged
/// into clusters and sorted by (real, imaginary) part. Throws NonConvergence
/// when the iteration cap is hit.
std::vector<RootCluster<Complex>> poly_roots(const Polynomial<Complex>& p,
                                             const RootOptions& opts = {});

/// Exact factorization of p over the given candidate roots. Each candidate
/// is divided out as often as it divides p; throws ExactRootingUnavailable
/// unless the candidates account for the full degree.
std::vector<RootCluster<Exact>> poly_roots_exact(const Polynomial<Exact>& p,
                                                 std::span<const Exact> candidates);

/// Candidate Gaussian rationals near the float roots of p (continued-fraction
/// rationalization of each cluster center), for use with poly_roots_exact.
std::vector<Exact> rational_root_candidates(const Polynomial<Exact>& p, double tol = 1e-8);

/// Dispatching overload: float rooting for Complex, exact rooting through
/// rational_root_candidates for Exact.
template <ScalarType T>
std::vector<RootCluster<T>> find_roots(const Polynomial<T>& p, double tol = 1e-8) {
  if constexpr (is_exact_v<T>) {
    const auto cands = rational_root_candidates(p, tol);
    return poly_roots_exact(p, cands);
  } else {
    return poly_roots(p, RootOptions{.tol = tol});
  }
}

Polynomial<Complex> to_float(const Polynomial<Exact>& p);

}  // namespace jacobi
