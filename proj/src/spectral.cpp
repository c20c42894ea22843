#include "jacobi/spectral.hpp"

#include <algorithm>

#include "jacobi/error.hpp"
#include "jacobi/linalg.hpp"
#include "jacobi/roots.hpp"

namespace jacobi {

template <ScalarType T>
MomentSequence<T>::MomentSequence(std::vector<T> s) : s_(std::move(s)) {
  if (s_.size() < 3 || s_.size() % 2 == 0)
    fail(ErrorKind::SizeMismatch,
         "moment sequence needs an odd length >= 3, got " + std::to_string(s_.size()));
}

template <ScalarType T>
SpectralData<T>::SpectralData(std::vector<SpectralEntry<T>> entries) : entries_(std::move(entries)) {
  if (entries_.empty()) fail(ErrorKind::InvalidArgument, "spectral data needs at least one eigenvalue");
  for (const auto& e : entries_)
    if (e.chain.empty()) fail(ErrorKind::InvalidArgument, "empty normalizing chain at lambda = " + to_string(e.lambda));
}

template <ScalarType T>
std::size_t SpectralData<T>::size() const {
  std::size_t n = 0;
  for (const auto& e : entries_) n += e.chain.size();
  return n;
}

template <ScalarType T>
T SpectralData<T>::first_chain_sum() const {
  T sum(0);
  for (const auto& e : entries_) sum += e.chain.front();
  return sum;
}

template <ScalarType T>
std::size_t Functional<T>::size() const {
  return std::visit([](const auto& r) { return r.size(); }, rep_);
}

template <ScalarType T>
MomentSequence<T> Functional<T>::moments() const {
  if (const auto* ms = moment_sequence()) return *ms;
  return moments_from_spectral_data(*spectral_data());
}

namespace {

// Newton on P_N through the pointwise recurrence. Keeps the original root if
// the residual does not improve.
Complex polish_root(const JacobiMatrix<Complex>& J, Complex z) {
  const long N = static_cast<long>(J.size());
  auto v = recurrence_values(J, z);
  Real best = abs(v.p(N));
  for (int it = 0; it < 8 && best > 0; ++it) {
    if (is_zero(v.dp(N))) break;
    const Complex cand = z - v.p(N) / v.dp(N);
    auto w = recurrence_values(J, cand);
    const Real r = abs(w.p(N));
    if (!(r < best)) break;
    z = cand;
    best = r;
    v = std::move(w);
  }
  return z;
}

template <ScalarType T>
Polynomial<T> power_of_linear(const T& root, std::size_t k) {
  Polynomial<T> p = Polynomial<T>::constant(T(1));
  const auto f = Polynomial<T>::linear_factor(root);
  for (std::size_t i = 0; i < k; ++i) p = p * f;
  return p;
}

}  // namespace

template <ScalarType T>
ForwardResult<T> forward_spectral_data(const JacobiMatrix<T>& J, double tol) {
  const long N = static_cast<long>(J.size());
  const auto pp = recurrence_polys(J);
  const auto& PN = pp.P(N);
  const auto& QN = pp.Q(N);

  auto clusters = find_roots(PN, tol);
  if constexpr (!is_exact_v<T>) {
    for (auto& c : clusters)
      if (c.multiplicity == 1) c.center = polish_root(J, c.center);
  }

  // Column (k, j) holds the coefficients of P_N / (lambda - lambda_k)^j,
  // built as a product so that it is a polynomial in both backends.
  const auto n = static_cast<std::size_t>(N);
  DenseMatrix<T> A(n, n);
  std::size_t col = 0;
  for (std::size_t k = 0; k < clusters.size(); ++k) {
    Polynomial<T> others = Polynomial<T>::constant(PN.leading());
    for (std::size_t i = 0; i < clusters.size(); ++i)
      if (i != k)
        others = others * power_of_linear(clusters[i].center, static_cast<std::size_t>(clusters[i].multiplicity));
    const auto m = static_cast<std::size_t>(clusters[k].multiplicity);
    for (std::size_t j = 1; j <= m; ++j) {
      const auto column = others * power_of_linear(clusters[k].center, m - j);
      for (std::size_t r = 0; r < n; ++r) A(r, col) = column.coeff(r);
      ++col;
    }
  }
  std::vector<T> rhs(n);
  for (std::size_t r = 0; r < n; ++r) rhs[r] = QN.coeff(r);

  SolveInfo info;
  const auto beta = solve(A, rhs, &info);
  if (info.singular)
    fail(ErrorKind::NonConvergence, "partial-fraction system is singular; eigenvalues not resolved at tol");

  std::vector<SpectralEntry<T>> entries;
  std::size_t at = 0;
  for (const auto& c : clusters) {
    SpectralEntry<T> e{c.center, {}};
    for (int j = 0; j < c.multiplicity; ++j) e.chain.push_back(beta[at++]);
    entries.push_back(std::move(e));
  }
  ForwardResult<T> out{canonical_order(SpectralData<T>(std::move(entries))), info.condition, false};
  out.ill_conditioned = !is_exact_v<T> && info.condition > 1.0 / tol;
  return out;
}

template <ScalarType T>
MomentSequence<T> moments_from_spectral_data(const SpectralData<T>& sd) {
  const std::size_t N = sd.size();
  std::vector<T> s(2 * N + 1, T(0));
  for (const auto& e : sd.entries()) {
    const std::size_t m = e.chain.size();
    // powers[p] = lambda^p
    std::vector<T> powers(2 * N + 1, T(1));
    for (std::size_t p = 1; p < powers.size(); ++p) powers[p] = powers[p - 1] * e.lambda;
    for (std::size_t l = 0; l <= 2 * N; ++l) {
      T binom(1);  // C(l, j-1)
      const std::size_t top = std::min(m, l + 1);
      for (std::size_t j = 1; j <= top; ++j) {
        if (j > 1) binom = binom * T(static_cast<long>(l - j + 2)) / T(static_cast<long>(j - 1));
        s[l] += binom * e.chain[j - 1] * powers[l - j + 1];
      }
    }
  }
  return MomentSequence<T>(std::move(s));
}

template <ScalarType T>
T evaluate_functional(const Functional<T>& f, const Polynomial<T>& G) {
  const std::size_t N = f.size();
  if (G.degree() > static_cast<int>(2 * N))
    fail(ErrorKind::DegreeTooHigh,
         "polynomial degree " + std::to_string(G.degree()) + " exceeds 2N = " + std::to_string(2 * N));
  if (const auto* sd = f.spectral_data()) {
    T total(0);
    for (const auto& e : sd->entries()) {
      Polynomial<T> d = G;
      T factorial(1);
      for (std::size_t j = 0; j < e.chain.size(); ++j) {
        if (j > 0) {
          d = d.derivative();
          factorial *= T(static_cast<long>(j));
        }
        total += e.chain[j] * d(e.lambda) / factorial;
      }
    }
    return total;
  }
  const auto& s = f.moment_sequence()->values();
  T total(0);
  for (std::size_t l = 0; l < G.coeffs().size(); ++l) total += G.coeffs()[l] * s[l];
  return total;
}

template <ScalarType T>
SpectralData<T> real_normalizing_numbers(const JacobiMatrix<T>& J, double tol) {
  if (!J.is_real()) fail(ErrorKind::NotReal, "normalizing numbers need a real matrix");
  const long N = static_cast<long>(J.size());
  const auto PN = recurrence_polys(J).P(N);
  std::vector<SpectralEntry<T>> entries;
  for (const auto& c : find_roots(PN, tol)) {
    if (c.multiplicity != 1)
      fail(ErrorKind::NonConvergence, "eigenvalues of a real matrix not resolved at tol = " + std::to_string(tol));
    T lambda = real_part(c.center);
    if constexpr (!is_exact_v<T>) lambda = real_part(polish_root(J, lambda));
    const auto v = recurrence_values(J, lambda);
    T sum(0);
    for (long n = 0; n < N; ++n) sum += v.p(n) * v.p(n);
    entries.push_back({lambda, {T(1) / sum}});
  }
  return canonical_order(SpectralData<T>(std::move(entries)));
}

template <ScalarType T>
Polynomial<T> finite_transform(const JacobiMatrix<T>& J, const std::vector<T>& f) {
  if (f.size() != J.size())
    fail(ErrorKind::SizeMismatch, "transform needs " + std::to_string(J.size()) + " coefficients");
  const auto pp = recurrence_polys(J);
  Polynomial<T> F;
  for (std::size_t m = 0; m < f.size(); ++m) F += pp.P(static_cast<long>(m)) * f[m];
  return F;
}

template <ScalarType T>
std::vector<T> inverse_transform(const JacobiMatrix<T>& J, const Polynomial<T>& F) {
  const std::size_t N = J.size();
  if (F.degree() > static_cast<int>(N) - 1)
    fail(ErrorKind::DegreeTooHigh, "transform input must have degree <= N - 1 = " + std::to_string(N - 1));
  const Functional<T> omega(moment_oracle(J));
  const auto pp = recurrence_polys(J);
  std::vector<T> out;
  out.reserve(N);
  for (std::size_t n = 0; n < N; ++n) out.push_back(evaluate_functional(omega, F * pp.P(static_cast<long>(n))));
  return out;
}

template <ScalarType T>
SpectralData<T> canonical_order(SpectralData<T> sd) {
  auto entries = sd.entries();
  std::stable_sort(entries.begin(), entries.end(),
                   [](const auto& a, const auto& b) { return lex_less(a.lambda, b.lambda); });
  return SpectralData<T>(std::move(entries));
}

#define SPECTRAL_INSTANTIATE(T)                                                               \
  template class MomentSequence<T>;                                                           \
  template class SpectralData<T>;                                                             \
  template class Functional<T>;                                                               \
  template ForwardResult<T> forward_spectral_data<T>(const JacobiMatrix<T>&, double);         \
  template MomentSequence<T> moments_from_spectral_data<T>(const SpectralData<T>&);           \
  template T evaluate_functional<T>(const Functional<T>&, const Polynomial<T>&);              \
  template SpectralData<T> real_normalizing_numbers<T>(const JacobiMatrix<T>&, double);       \
  template Polynomial<T> finite_transform<T>(const JacobiMatrix<T>&, const std::vector<T>&);  \
  template std::vector<T> inverse_transform<T>(const JacobiMatrix<T>&, const Polynomial<T>&); \
  template SpectralData<T> canonical_order<T>(SpectralData<T>);

SPECTRAL_INSTANTIATE(Complex)
SPECTRAL_INSTANTIATE(Exact)

}  // namespace jacobi
