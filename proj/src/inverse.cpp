#include "jacobi/inverse.hpp"

#include <algorithm>
#include <cstdio>

#include "jacobi/error.hpp"
#include "jacobi/linalg.hpp"

namespace jacobi {

std::string_view to_string(Verdict::Kind kind) {
  switch (kind) {
    case Verdict::Kind::ComplexValid: return "ComplexValid";
    case Verdict::Kind::RealValid: return "RealValid";
    case Verdict::Kind::Invalid: return "Invalid";
  }
  return "Invalid";
}

namespace {

// D_n is numerically zero when its pivot ratio falls this far below the
// working precision's reach. Tuned so that exactly-singular Hankel blocks built
// from working-precision inputs are caught while honest tiny minors pass.
double zero_ratio() {
  static const double r = 1e6 * static_cast<double>(working_epsilon());
  return r;
}

template <ScalarType T>
DenseMatrix<T> hankel_block(const std::vector<T>& s, std::size_t n, std::size_t shift = 0) {
  DenseMatrix<T> H(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) H(i, j) = s[i + j + shift];
  return H;
}

template <ScalarType T>
bool near(const T& a, const T& b, double tol) {
  if constexpr (is_exact_v<T>) {
    (void)tol;
    return a == b;
  } else {
    return magnitude(a - b) <= tol * std::max({1.0, magnitude(a), magnitude(b)});
  }
}

template <ScalarType T>
bool numerically_real(const T& x, double tol) {
  if constexpr (is_exact_v<T>) {
    (void)tol;
    return x.is_real();
  } else {
    return std::fabs(static_cast<double>(x.imag())) <= tol * std::max(1.0, magnitude(x));
  }
}

template <ScalarType T>
bool positive_real(const T& x) {
  if constexpr (is_exact_v<T>) {
    return sgn(x.real()) > 0;
  } else {
    return x.real() > 0;
  }
}

std::string fmt_double(double x) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

Verdict invalid(std::string reason) { return {Verdict::Kind::Invalid, std::move(reason)}; }

std::string dn(std::size_t n) { return "D_" + std::to_string(n); }

}  // namespace

template <ScalarType T>
HankelReport<T> hankel_report(const MomentSequence<T>& ms, CheckMode mode, double tol) {
  const std::size_t N = ms.size();
  const auto& s = ms.values();
  HankelReport<T> rep;
  rep.D.push_back(T(1));
  rep.Delta.push_back(T(0));
  for (std::size_t n = 0; n <= N; ++n) {
    auto H = hankel_block(s, n + 1);
    rep.D.push_back(determinant(H));
    if (n < N) {
      for (std::size_t i = 0; i <= n; ++i) H(i, n) = s[n + 1 + i];
      rep.Delta.push_back(determinant(std::move(H)));
    }
  }

  // Float: zero tests go through the pivot ratio |D_n / D_{n-1}| against the
  // size of the terms that produced it, not through |D_n| itself.
  if constexpr (!is_exact_v<T>) {
    for (std::size_t n = 1; n <= N; ++n) {
      SolveInfo info;
      std::vector<T> rhs(n);
      for (std::size_t m = 0; m < n; ++m) rhs[m] = -s[n + m];
      const auto chi = solve(hankel_block(s, n), rhs, &info);
      if (info.singular) {
        rep.pivot_ratio.push_back(0.0);
        continue;
      }
      T v = s[2 * n];
      double scale = magnitude(s[2 * n]);
      for (std::size_t k = 0; k < n; ++k) {
        const T term = chi[k] * s[k + n];
        v += term;
        scale += magnitude(term);
      }
      rep.pivot_ratio.push_back(scale == 0.0 ? 0.0 : magnitude(v) / scale);
    }
  }

  auto is_zero_at = [&](std::size_t n, bool last) {
    if constexpr (is_exact_v<T>) {
      (void)last;
      return rep.d(static_cast<long>(n)).is_zero();
    } else {
      const double c = rep.pivot_ratio[n - 1];
      return c <= (last ? tol : zero_ratio());
    }
  };

  if (!near(s[0], T(1), tol)) {
    rep.verdict = invalid("normalization: s_0 = D_0 = " + to_string(s[0]) + ", expected 1");
    return rep;
  }
  if (mode == CheckMode::Real) {
    for (std::size_t l = 0; l < s.size(); ++l)
      if (!numerically_real(s[l], tol)) {
        rep.verdict = invalid("moment s_" + std::to_string(l) + " = " + to_string(s[l]) + " is not real");
        return rep;
      }
  }
  for (std::size_t n = 1; n < N; ++n) {
    if (is_zero_at(n, false)) {
      rep.verdict = invalid(dn(n) + " = 0: leading Hankel minor vanishes before order N");
      return rep;
    }
    if constexpr (!is_exact_v<T>) {
      if (rep.pivot_ratio[n - 1] <= tol) rep.ill_conditioned = true;
    }
    if (mode == CheckMode::Real) {
      const T& d = rep.d(static_cast<long>(n));
      if (!numerically_real(d, tol) || !positive_real(d)) {
        rep.verdict = invalid(dn(n) + " = " + to_string(d) + " is not positive");
        return rep;
      }
    }
  }
  if (!is_zero_at(N, true)) {
    std::string detail = to_string(rep.d(static_cast<long>(N)));
    if constexpr (!is_exact_v<T>) detail += " (pivot ratio " + fmt_double(rep.pivot_ratio[N - 1]) + ")";
    rep.verdict = invalid(dn(N) + " = " + detail + " is nonzero: no annihilating polynomial of degree N");
    return rep;
  }
  rep.verdict = {mode == CheckMode::Real ? Verdict::Kind::RealValid : Verdict::Kind::ComplexValid, {}};
  return rep;
}

template <ScalarType T>
Verdict validate(const Functional<T>& f, CheckMode mode, double tol) {
  if (const auto* sd = f.spectral_data()) {
    const auto& e = sd->entries();
    for (std::size_t i = 0; i < e.size(); ++i)
      for (std::size_t j = i + 1; j < e.size(); ++j) {
        const bool same = is_exact_v<T> ? e[i].lambda == e[j].lambda
                                        : magnitude(e[i].lambda - e[j].lambda) <=
                                              tol * std::max(1.0, magnitude(e[i].lambda));
        if (same) return invalid("eigenvalues must be distinct: " + to_string(e[i].lambda) + " repeats");
      }
    if (mode == CheckMode::Real) {
      T sum(0);
      for (const auto& x : e) {
        if (!numerically_real(x.lambda, tol)) return invalid("eigenvalue " + to_string(x.lambda) + " is not real");
        if (x.chain.size() != 1)
          return invalid("eigenvalue " + to_string(x.lambda) + " has multiplicity " +
                         std::to_string(x.chain.size()) + "; real data need simple eigenvalues");
        const T& beta = x.chain.front();
        if (!numerically_real(beta, tol) || !positive_real(beta))
          return invalid("weight " + to_string(beta) + " at lambda = " + to_string(x.lambda) +
                         " is not positive");
        sum += beta;
      }
      if (!near(sum, T(1), tol)) return invalid("normalization: weights sum to " + to_string(sum) + ", expected 1");
      return {Verdict::Kind::RealValid, {}};
    }
    const T sum = sd->first_chain_sum();
    if (!near(sum, T(1), tol))
      return invalid("normalization: sum of beta_k1 = " + to_string(sum) + ", expected 1");
  }
  return hankel_report(f.moments(), mode, tol).verdict;
}

template <ScalarType T>
std::vector<T> solve_fundamental(const MomentSequence<T>& ms, std::size_t n) {
  if (n < 1 || n > ms.size())
    fail(ErrorKind::InvalidArgument, "fundamental equation row must satisfy 1 <= n <= N");
  const auto& s = ms.values();
  std::vector<T> rhs(n);
  for (std::size_t m = 0; m < n; ++m) rhs[m] = -s[n + m];
  SolveInfo info;
  auto chi = solve(hankel_block(s, n), rhs, &info);
  if (info.singular || info.condition * zero_ratio() > 1.0)
    fail(ErrorKind::SingularLeadingMinor, dn(n - 1) + " = 0: fundamental equation has no unique solution");
  return chi;
}

template <ScalarType T>
std::vector<T> solve_fundamental_cramer(const MomentSequence<T>& ms, std::size_t n) {
  if (n < 1 || n > ms.size())
    fail(ErrorKind::InvalidArgument, "fundamental equation row must satisfy 1 <= n <= N");
  const auto& s = ms.values();
  const auto H = hankel_block(s, n);
  const T d = determinant(H);
  if (is_zero(d))
    fail(ErrorKind::SingularLeadingMinor, dn(n - 1) + " = 0: fundamental equation has no unique solution");
  std::vector<T> chi(n);
  for (std::size_t k = 0; k < n; ++k) {
    auto Hk = H;
    for (std::size_t m = 0; m < n; ++m) Hk(m, k) = s[n + m];
    chi[k] = -determinant(std::move(Hk)) / d;
  }
  return chi;
}

SignSequence::SignSequence(std::vector<int> signs) : signs_(std::move(signs)) {
  for (int s : signs_)
    if (s != 1 && s != -1) fail(ErrorKind::InvalidArgument, "signs must be +1 or -1");
}

SignSequence SignSequence::parse(std::string_view text) {
  std::vector<int> out;
  for (std::size_t i = 0; i < text.size();) {
    if (text[i] == '+') {
      out.push_back(1);
      ++i;
    } else if (text[i] == '-') {
      out.push_back(-1);
      ++i;
    } else if (text.substr(i, 3) == "\xE2\x88\x92") {  // U+2212 MINUS SIGN
      out.push_back(-1);
      i += 3;
    } else {
      fail(ErrorKind::Parse, "sign sequence may contain only '+' and '-': \"" + std::string(text) + "\"");
    }
  }
  return SignSequence(std::move(out));
}

std::string SignSequence::str() const {
  std::string out;
  for (int s : signs_) out += s > 0 ? '+' : '-';
  return out;
}

template <ScalarType T>
SignSequence matching_signs(const JacobiMatrix<T>& J) {
  std::vector<int> out;
  for (const auto& a : J.off()) {
    const auto r = branch_sqrt(T(a * a));
    if constexpr (is_exact_v<T>) {
      out.push_back(*r == a ? 1 : -1);
    } else {
      out.push_back(magnitude(a - *r) <= magnitude(a + *r) ? 1 : -1);
    }
  }
  return SignSequence(std::move(out));
}

template <ScalarType T>
Reconstruction<T> reconstruct_squares(const Functional<T>& f, const ReconstructOptions& opts) {
  const Verdict v = validate(f, CheckMode::Complex, opts.tol);
  if (!v.valid()) fail(ErrorKind::ValidationFailed, v.reason);
  const auto ms = f.moments();
  const auto& s = ms.values();
  const std::size_t N = ms.size();
  const auto rep = hankel_report(ms, CheckMode::Complex, opts.tol);

  Reconstruction<T> r;
  r.ill_conditioned = rep.ill_conditioned;
  // Determinant route.
  for (std::size_t n = 0; n < N; ++n) {
    const long i = static_cast<long>(n);
    r.diag.push_back(rep.delta(i) / rep.d(i) - rep.delta(i - 1) / rep.d(i - 1));
    if (n + 1 < N) r.off_squared.push_back(rep.d(i - 1) * rep.d(i + 1) / (rep.d(i) * rep.d(i)));
  }

  // Monic-coefficient route.
  auto& st = r.state;
  st.chi.assign(N + 1, {});
  for (std::size_t n = 1; n <= N; ++n) st.chi[n] = solve_fundamental(ms, n);
  for (std::size_t n = 0; n < N; ++n) {
    T acc = s[2 * n];
    for (std::size_t k = 0; k < n; ++k) acc += st.chi[n][k] * s[k + n];
    st.inv_alpha_sq.push_back(std::move(acc));
  }
  for (std::size_t n = 0; n < N; ++n) {
    const T prev = n == 0 ? T(0) : st.chi[n][n - 1];
    const T b = prev - st.chi[n + 1][n];
    if (!near(b, r.diag[n], opts.tol))
      fail(ErrorKind::BranchInconsistency, "b_" + std::to_string(n) + ": determinant route " + to_string(r.diag[n]) +
                                               " vs recursion " + to_string(b));
    if (n + 1 < N) {
      const T a2 = st.inv_alpha_sq[n + 1] / st.inv_alpha_sq[n];
      if (!near(a2, r.off_squared[n], opts.tol))
        fail(ErrorKind::BranchInconsistency, "a_" + std::to_string(n) + "^2: determinant route " +
                                                 to_string(r.off_squared[n]) + " vs recursion " + to_string(a2));
    }
  }
  return r;
}

template <ScalarType T>
JacobiMatrix<T> apply_signs(const Reconstruction<T>& r, const SignSequence& signs) {
  if (signs.size() != r.off_squared.size())
    fail(ErrorKind::SizeMismatch, "sign sequence needs " + std::to_string(r.off_squared.size()) + " entries, got " +
                                      std::to_string(signs.size()));
  std::vector<T> off;
  for (std::size_t n = 0; n < r.off_squared.size(); ++n) {
    const auto root = branch_sqrt(r.off_squared[n]);
    if (!root)
      fail(ErrorKind::ExactRootingUnavailable,
           "a_" + std::to_string(n) + "^2 = " + to_string(r.off_squared[n]) + " has no Gaussian-rational square root");
    off.push_back(signs[n] > 0 ? *root : T(-*root));
  }
  return make_jacobi(r.diag, std::move(off));
}

template <ScalarType T>
JacobiMatrix<T> reconstruct(const Functional<T>& f, const SignSequence& signs, const ReconstructOptions& opts) {
  if (signs.size() + 1 != f.size())
    fail(ErrorKind::SizeMismatch, "sign sequence needs " + std::to_string(f.size() - 1) + " entries, got " +
                                      std::to_string(signs.size()));
  return apply_signs(reconstruct_squares(f, opts), signs);
}

template <ScalarType T>
std::vector<JacobiMatrix<T>> reconstruct_all(const Functional<T>& f, const ReconstructOptions& opts) {
  const std::size_t k = f.size() - 1;
  if (k > opts.enumeration_cap)
    fail(ErrorKind::SizeCap, "2^" + std::to_string(k) + " sign variants exceed the enumeration cap of 2^" +
                                 std::to_string(opts.enumeration_cap));
  const auto r = reconstruct_squares(f, opts);
  std::vector<JacobiMatrix<T>> out;
  const std::size_t count = std::size_t{1} << k;
  out.reserve(count);
  for (std::size_t idx = 0; idx < count; ++idx) {
    std::vector<int> sig(k);
    for (std::size_t j = 0; j < k; ++j) sig[j] = (idx >> (k - 1 - j)) & 1U ? -1 : 1;
    out.push_back(apply_signs(r, SignSequence(std::move(sig))));
  }
  return out;
}

template <ScalarType T>
JacobiMatrix<T> reconstruct_real(const SpectralData<T>& sd, const SignSequence& signs,
                                 const ReconstructOptions& opts) {
  const Functional<T> f(sd);
  const Verdict v = validate(f, CheckMode::Real, opts.tol);
  if (!v.valid()) fail(ErrorKind::ValidationFailed, v.reason);
  if (signs.size() + 1 != f.size())
    fail(ErrorKind::SizeMismatch, "sign sequence needs " + std::to_string(f.size() - 1) + " entries, got " +
                                      std::to_string(signs.size()));
  auto r = reconstruct_squares(f, opts);
  // Real data give real entries; drop rounding noise in the imaginary parts.
  for (auto& x : r.diag) x = real_part(x);
  for (auto& x : r.off_squared) x = real_part(x);
  return apply_signs(r, signs);
}

#define INVERSE_INSTANTIATE(T)                                                                            \
  template HankelReport<T> hankel_report<T>(const MomentSequence<T>&, CheckMode, double);                 \
  template Verdict validate<T>(const Functional<T>&, CheckMode, double);                                  \
  template std::vector<T> solve_fundamental<T>(const MomentSequence<T>&, std::size_t);                    \
  template std::vector<T> solve_fundamental_cramer<T>(const MomentSequence<T>&, std::size_t);             \
  template SignSequence matching_signs<T>(const JacobiMatrix<T>&);                                        \
  template Reconstruction<T> reconstruct_squares<T>(const Functional<T>&, const ReconstructOptions&);     \
  template JacobiMatrix<T> apply_signs<T>(const Reconstruction<T>&, const SignSequence&);                 \
  template JacobiMatrix<T> reconstruct<T>(const Functional<T>&, const SignSequence&,                      \
                                          const ReconstructOptions&);                                     \
  template std::vector<JacobiMatrix<T>> reconstruct_all<T>(const Functional<T>&, const ReconstructOptions&); \
  template JacobiMatrix<T> reconstruct_real<T>(const SpectralData<T>&, const SignSequence&,               \
                                               const ReconstructOptions&);

INVERSE_INSTANTIATE(Complex)
INVERSE_INSTANTIATE(Exact)

}  // namespace jacobi
