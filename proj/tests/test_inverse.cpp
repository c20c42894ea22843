#include <doctest.h>

#include "jacobi/error.hpp"
#include "oracles.hpp"

using namespace jacobi;

namespace {

Exact q(long p, long d = 1) { return Exact(mpq_class(p, d)); }
Exact gi(long re, long im) { return Exact(mpq_class(re), mpq_class(im)); }

template <class T>
T pow_int(const T& z, long k) {
  T r(1);
  for (long i = 0; i < k; ++i) r *= z;
  return r;
}

// s_l of G(l0) + c1 G'(l0) + c2 G''(l0), l = 0..2N.
template <class T>
MomentSequence<T> derivative_moments(const T& l0, const T& c1, const T& c2, std::size_t N) {
  std::vector<T> s;
  for (long l = 0; l <= static_cast<long>(2 * N); ++l) {
    T v = pow_int(l0, l);
    if (l >= 1) v += c1 * T(l) * pow_int(l0, l - 1);
    if (l >= 2) v += c2 * T(l * (l - 1)) * pow_int(l0, l - 2);
    s.push_back(v);
  }
  return MomentSequence<T>(s);
}

template <class T>
MomentSequence<T> two_point_moments(const T& c) {
  return MomentSequence<T>({T(1), T(1) - c, T(1) - c, T(1) - c, T(1) - c});
}

template <class T>
MomentSequence<T> hilbert_moments(std::size_t N) {
  std::vector<T> s;
  for (std::size_t l = 0; l <= 2 * N; ++l) {
    if constexpr (std::is_same_v<T, Exact>) {
      s.push_back(Exact(mpq_class(1, static_cast<long>(l + 1))));
    } else {
      s.push_back(T(1) / T(static_cast<long>(l + 1)));
    }
  }
  return MomentSequence<T>(s);
}

JacobiMatrix<Exact> ones(std::size_t n) {
  return make_jacobi<Exact>(std::vector<Exact>(n, q(1)), std::vector<Exact>(n - 1, q(1)));
}

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error thrown");
  return ErrorKind::InvalidArgument;
}

}  // namespace

TEST_CASE("hankel_report examples") {
  for (const Exact& c : {q(1, 4), q(1, 2), gi(3, 2), Exact(mpq_class(1, 2), mpq_class(1, 3))}) {
    const auto r = hankel_report(two_point_moments(c), CheckMode::Complex);
    CHECK(r.d(-1) == q(1));
    CHECK(r.d(0) == q(1));
    CHECK(r.d(1) == c * (Exact(1) - c));
    CHECK(r.d(2) == q(0));
    CHECK(r.delta(1) == c * (Exact(1) - c));
    CHECK(r.verdict.kind == Verdict::Kind::ComplexValid);
  }
  for (const auto& [l0, c] : {std::pair{q(2), q(1)}, std::pair{gi(0, 1), gi(1, 1)}, std::pair{gi(2, -1), q(-3, 5)}}) {
    const auto r = hankel_report(derivative_moments(l0, c, q(0), 2), CheckMode::Complex);
    CHECK(r.d(1) == -c * c);
    CHECK(r.d(2) == q(0));
    CHECK(r.delta(1) == Exact(-2) * c * c * l0);
    CHECK(r.verdict.valid());
  }
  {
    const Exact b0 = gi(5, -2);
    const auto r = hankel_report(MomentSequence<Exact>({q(1), b0, b0 * b0}), CheckMode::Complex);
    CHECK(r.d(0) == q(1));
    CHECK(r.d(1) == q(0));
    CHECK(r.verdict.kind == Verdict::Kind::ComplexValid);
  }
  {
    // float, c = 1/4: same determinants to working precision
    const auto r = hankel_report(two_point_moments(Complex(0.25)), CheckMode::Complex);
    CHECK(oracle::rel_err(r.d(1), Complex(0.1875)) < 1e-28);
    CHECK(magnitude(r.d(2)) < 1e-28);
    CHECK(r.verdict.kind == Verdict::Kind::ComplexValid);
    REQUIRE(r.pivot_ratio.size() == 2);
    CHECK(r.pivot_ratio[1] < 1e-28);
  }
  // degenerate c makes D_1 vanish
  CHECK_FALSE(hankel_report(two_point_moments(q(1)), CheckMode::Complex).verdict.valid());
  CHECK_FALSE(hankel_report(two_point_moments(q(0)), CheckMode::Complex).verdict.valid());
  CHECK_FALSE(hankel_report(two_point_moments(Complex(0)), CheckMode::Complex).verdict.valid());
}

TEST_CASE("hankel_report real mode") {
  // real two-point measure
  const auto ok = hankel_report(two_point_moments(q(1, 4)), CheckMode::Real);
  CHECK(ok.verdict.kind == Verdict::Kind::RealValid);
  // G(2) + G'(2) has D_1 = -1 < 0
  const auto bad = hankel_report(derivative_moments(q(2), q(1), q(0), 2), CheckMode::Real);
  CHECK(bad.verdict.kind == Verdict::Kind::Invalid);
  CHECK_FALSE(bad.verdict.reason.empty());
  // complex moments are never real-valid
  CHECK_FALSE(hankel_report(two_point_moments(gi(1, 1)), CheckMode::Real).verdict.valid());
  // s_0 != 1
  const auto unnorm = hankel_report(MomentSequence<Exact>({q(2), q(0), q(1)}), CheckMode::Complex);
  CHECK_FALSE(unnorm.verdict.valid());
  CHECK(unnorm.verdict.reason.find("normalization") != std::string::npos);
}

TEST_CASE("validate: N = 3 boundary") {
  const Exact l0 = gi(1, -1);
  struct Case {
    Exact c1, c2;
    bool valid;
  };
  const std::vector<Case> cases{
      {q(1), q(1), true}, {q(1), q(0), false}, {q(2), q(2), false}, {q(0), q(0), false},
      {gi(1, 1), gi(0, 1), false},  // 2c2 = c1^2 = 2i
      {gi(1, 1), q(1), true},
  };
  for (const auto& c : cases) {
    const Functional<Exact> f(derivative_moments(l0, c.c1, c.c2, 3));
    CHECK(validate(f, CheckMode::Complex).valid() == c.valid);
    // same functional from spectral data
    const Functional<Exact> g(SpectralData<Exact>({{l0, {q(1), c.c1, Exact(2) * c.c2}}}));
    CHECK(validate(g, CheckMode::Complex).valid() == c.valid);
  }
  // float, sqrt 2 at working precision sits on the boundary
  const Complex r2 = Complex(sqrt(Real(2)));
  CHECK_FALSE(validate(Functional<Complex>(derivative_moments(Complex(0.5), r2, Complex(1), 3)), CheckMode::Complex).valid());
  CHECK(validate(Functional<Complex>(derivative_moments(Complex(0.5), Complex(1), Complex(1), 3)), CheckMode::Complex).valid());
}

TEST_CASE("validate: spectral data") {
  const SpectralData<Exact> good({{q(-1), {q(1, 2)}}, {q(1), {q(1, 2)}}});
  CHECK(validate(Functional<Exact>(good), CheckMode::Real).kind == Verdict::Kind::RealValid);
  CHECK(validate(Functional<Exact>(good), CheckMode::Complex).kind == Verdict::Kind::ComplexValid);

  const SpectralData<Exact> neg({{q(-1), {q(3, 2)}}, {q(1), {q(-1, 2)}}});
  const auto v = validate(Functional<Exact>(neg), CheckMode::Real);
  CHECK(v.kind == Verdict::Kind::Invalid);
  CHECK(v.reason.find("positive") != std::string::npos);
  // the same data are a valid complex functional
  CHECK(validate(Functional<Exact>(neg), CheckMode::Complex).valid());

  CHECK_FALSE(validate(Functional<Exact>(SpectralData<Exact>({{q(0), {q(1, 3)}}, {q(1), {q(1, 3)}}})),
                       CheckMode::Complex).valid());
  CHECK_FALSE(validate(Functional<Exact>(SpectralData<Exact>({{q(0), {q(1, 2)}}, {q(0), {q(1, 2)}}})),
                       CheckMode::Complex).valid());
  CHECK_FALSE(validate(Functional<Exact>(SpectralData<Exact>({{gi(0, 1), {q(1)}}})), CheckMode::Real).valid());
  CHECK_FALSE(validate(Functional<Exact>(SpectralData<Exact>({{q(2), {q(1), q(1)}}})), CheckMode::Real).valid());
  // a zero weight breaks D_{N-1}
  CHECK_FALSE(validate(Functional<Exact>(SpectralData<Exact>({{q(0), {q(0)}}, {q(1), {q(1)}}})),
                       CheckMode::Complex).valid());
}

TEST_CASE("Hilbert moments are rejected") {
  for (std::size_t N = 1; N <= 10; ++N) {
    const auto r = hankel_report(hilbert_moments<Exact>(N), CheckMode::Complex);
    CHECK(r.verdict.kind == Verdict::Kind::Invalid);
    CHECK(r.verdict.reason.find("D_" + std::to_string(N)) != std::string::npos);
    CHECK_FALSE(validate(Functional<Exact>(hilbert_moments<Exact>(N)), CheckMode::Real).valid());
  }
  for (std::size_t N = 1; N <= 6; ++N)
    CHECK(hankel_report(hilbert_moments<Complex>(N), CheckMode::Complex).verdict.kind == Verdict::Kind::Invalid);
}

TEST_CASE("solve_fundamental") {
  const Exact c = gi(1, 3);
  CHECK(solve_fundamental(two_point_moments(c), 1) == std::vector<Exact>{c - Exact(1)});
  CHECK(solve_fundamental(MomentSequence<Exact>({q(1), q(0), q(1), q(0), q(1)}), 1) == std::vector<Exact>{q(0)});
  CHECK(kind_of([&] { solve_fundamental(two_point_moments(q(1)), 2); }) == ErrorKind::SingularLeadingMinor);

  oracle::Rng rng(41);
  int compared = 0;
  for (int t = 0; t < 60; ++t) {
    const std::size_t N = static_cast<std::size_t>(rng.integer(1, 5));
    std::vector<Exact> s{q(1)};
    for (std::size_t l = 1; l <= 2 * N; ++l) s.push_back(rng.gauss_rational());
    const MomentSequence<Exact> ms(s);
    for (std::size_t n = 1; n <= N; ++n) {
      std::vector<Exact> lu, cr;
      bool lu_fail = false, cr_fail = false;
      try {
        lu = solve_fundamental(ms, n);
      } catch (const Error&) {
        lu_fail = true;
      }
      try {
        cr = solve_fundamental_cramer(ms, n);
      } catch (const Error&) {
        cr_fail = true;
      }
      CHECK(lu_fail == cr_fail);
      if (lu_fail) continue;
      CHECK(lu == cr);
      // residual of the fundamental equation
      for (std::size_t m = 0; m < n; ++m) {
        Exact r = s[n + m];
        for (std::size_t k = 0; k < n; ++k) r += lu[k] * s[k + m];
        CHECK(r == q(0));
      }
      ++compared;
    }
  }
  CHECK(compared > 100);
}

TEST_CASE("SignSequence") {
  CHECK(SignSequence::parse("+-+").values() == std::vector<int>{1, -1, 1});
  CHECK(SignSequence::parse("−+").values() == std::vector<int>{-1, 1});
  CHECK(SignSequence::parse("").size() == 0);
  CHECK(SignSequence({1, -1}).str() == "+-");
  CHECK_THROWS_AS(SignSequence::parse("+x"), Error);
  CHECK_THROWS_AS(SignSequence({1, 0}), Error);
}

TEST_CASE("reconstruct examples") {
  {
    // c(1 - c) a perfect square: 1/4 and -4/9
    const auto J = reconstruct(Functional<Exact>(two_point_moments(q(1, 2))), SignSequence::parse("+"));
    CHECK(J.diag() == std::vector<Exact>{q(1, 2), q(1, 2)});
    CHECK(J.off() == std::vector<Exact>{q(1, 2)});
    const auto K = reconstruct(Functional<Exact>(two_point_moments(q(-1, 3))), SignSequence::parse("+"));
    CHECK(K.diag() == std::vector<Exact>{q(4, 3), q(-1, 3)});
    CHECK(K.off() == std::vector<Exact>{Exact(mpq_class(0), mpq_class(2, 3))});
  }
  {
    const Exact h = Exact(mpq_class(1, 2), mpq_class(1, 2));  // c(1 - c) = 1/2
    CHECK(kind_of([&] { reconstruct(Functional<Exact>(two_point_moments(h)), SignSequence::parse("+")); }) ==
          ErrorKind::ExactRootingUnavailable);
    const auto r = reconstruct_squares(Functional<Exact>(two_point_moments(h)));
    CHECK(r.diag == std::vector<Exact>{Exact(1) - h, h});
    CHECK(r.off_squared == std::vector<Exact>{h * (Exact(1) - h)});
  }
  {
    // float c = 1/2 + i/3
    const Complex c(0.5, 1.0 / 3);
    const auto J = reconstruct(Functional<Complex>(two_point_moments(c)), SignSequence::parse("+"));
    CHECK(oracle::rel_err(J.diag()[0], Complex(1) - c) < 1e-25);
    CHECK(oracle::rel_err(J.diag()[1], c) < 1e-25);
    const Complex a = *branch_sqrt(Complex(c * (Complex(1) - c)));
    CHECK(oracle::rel_err(J.off()[0], a) < 1e-25);
    const auto Jm = reconstruct(Functional<Complex>(two_point_moments(c)), SignSequence::parse("-"));
    CHECK(oracle::rel_err(Jm.off()[0], -a) < 1e-25);
  }
  for (const auto& [l0, c] : {std::pair{q(2), q(1)}, std::pair{gi(0, 1), gi(1, 1)}}) {
    const auto J = reconstruct(Functional<Exact>(derivative_moments(l0, c, q(0), 2)), SignSequence::parse("+"));
    CHECK(J.diag() == std::vector<Exact>{l0 + c, l0 - c});
    CHECK(J.off() == std::vector<Exact>{gi(0, 1) * c});
    const auto lf = Polynomial<Exact>::linear_factor(l0);
    CHECK(char_poly(J) == lf * lf);
  }
  {
    const auto J = reconstruct(Functional<Exact>(SpectralData<Exact>({{q(-1), {q(1, 2)}}, {q(1), {q(1, 2)}}})),
                               SignSequence::parse("+"));
    CHECK(J.diag() == std::vector<Exact>{q(0), q(0)});
    CHECK(J.off() == std::vector<Exact>{q(1)});
  }
  CHECK(kind_of([] { reconstruct(Functional<Exact>(two_point_moments(q(1))), SignSequence::parse("+")); }) ==
        ErrorKind::ValidationFailed);
  CHECK_THROWS_AS(reconstruct(Functional<Exact>(two_point_moments(q(1, 4))), SignSequence::parse("++")), Error);
}

TEST_CASE("reconstruct_all: sign families of the all-ones matrices") {
  {
    const auto all = reconstruct_all(Functional<Exact>(moment_oracle(ones(2))));
    REQUIRE(all.size() == 2);
    CHECK(all[0].off() == std::vector<Exact>{q(1)});
    CHECK(all[1].off() == std::vector<Exact>{q(-1)});
    for (const auto& J : all) CHECK(J.diag() == std::vector<Exact>{q(1), q(1)});
  }
  {
    const auto base = moment_oracle(ones(3));
    const auto all = reconstruct_all(Functional<Exact>(base));
    REQUIRE(all.size() == 4);
    const std::vector<std::vector<Exact>> want{{q(1), q(1)}, {q(1), q(-1)}, {q(-1), q(1)}, {q(-1), q(-1)}};
    for (std::size_t i = 0; i < 4; ++i) {
      CHECK(all[i].diag() == std::vector<Exact>{q(1), q(1), q(1)});
      CHECK(all[i].off() == want[i]);
      CHECK(moment_oracle(all[i]).values() == base.values());
    }
  }
  {
    // float family
    const auto J = make_jacobi<Complex>({Complex(1), Complex(1), Complex(1)}, {Complex(1), Complex(1)});
    const auto base = moment_oracle(J);
    for (const auto& K : reconstruct_all(Functional<Complex>(base))) {
      const auto s = moment_oracle(K);
      for (std::size_t l = 0; l < s.values().size(); ++l) CHECK(oracle::rel_err(s[l], base[l]) < 1e-25);
    }
  }
  const auto big = moment_oracle(ones(6));
  CHECK(reconstruct_all(Functional<Exact>(big)).size() == 32);
  CHECK(kind_of([&] { reconstruct_all(Functional<Exact>(big), ReconstructOptions{.enumeration_cap = 4}); }) ==
        ErrorKind::SizeCap);
}

TEST_CASE("reconstruct_real") {
  {
    const auto J = reconstruct_real(SpectralData<Exact>({{q(-1), {q(1, 2)}}, {q(1), {q(1, 2)}}}), SignSequence::parse("+"));
    CHECK(J.diag() == std::vector<Exact>{q(0), q(0)});
    CHECK(J.off() == std::vector<Exact>{q(1)});
  }
  {
    const auto J = reconstruct_real(SpectralData<Exact>({{q(7, 3), {q(1)}}}), SignSequence());
    CHECK(J.diag() == std::vector<Exact>{q(7, 3)});
  }
  CHECK(kind_of([] {
          reconstruct_real(SpectralData<Exact>({{q(-1), {q(3, 2)}}, {q(1), {q(-1, 2)}}}), SignSequence::parse("+"));
        }) == ErrorKind::ValidationFailed);

  oracle::Rng rng(43);
  for (int t = 0; t < 40; ++t) {
    const std::size_t N = static_cast<std::size_t>(rng.integer(1, 10));
    std::vector<double> lam;
    while (lam.size() < N) {
      const double x = rng.uniform(-3, 3);
      bool far = true;
      for (double y : lam) far = far && std::abs(x - y) > 0.05;
      if (far) lam.push_back(x);
    }
    std::sort(lam.begin(), lam.end());
    std::vector<Real> w;
    Real total = 0;
    for (std::size_t k = 0; k < N; ++k) {
      w.push_back(Real(rng.uniform(0.05, 1.0)));
      total += w.back();
    }
    std::vector<SpectralEntry<Complex>> entries;
    for (std::size_t k = 0; k < N; ++k) entries.push_back({Complex(lam[k]), {Complex(w[k] / total)}});
    const SpectralData<Complex> sd(entries);
    const auto J = reconstruct_real(sd, SignSequence::all_plus(N - 1));
    CHECK(J.is_real());
    for (const auto& a : J.off()) CHECK(a.real() > 0);
    const auto back = real_normalizing_numbers(J);
    REQUIRE(back.entries().size() == N);
    for (std::size_t k = 0; k < N; ++k) {
      CHECK(oracle::rel_err(back.entries()[k].lambda, entries[k].lambda) < 1e-7);
      CHECK(oracle::rel_err(back.entries()[k].chain[0], entries[k].chain[0]) < 1e-7);
    }
  }
}

TEST_CASE("property: exact roundtrip through moments") {
  oracle::Rng rng(51);
  for (int t = 0; t < 80; ++t) {
    const auto J = rng.exact_matrix(static_cast<std::size_t>(rng.integer(1, 6)));
    const Functional<Exact> f(moment_oracle(J));
    CHECK(validate(f, CheckMode::Complex).kind == Verdict::Kind::ComplexValid);
    const auto r = reconstruct_squares(f);
    CHECK(r.diag == J.diag());
    for (std::size_t n = 0; n + 1 < J.size(); ++n) CHECK(r.off_squared[n] == J.off()[n] * J.off()[n]);
    // alpha_n^2 = D_{n-1} / D_n
    const auto h = hankel_report(f.moments(), CheckMode::Complex);
    for (std::size_t n = 1; n < J.size(); ++n)
      CHECK(r.state.inv_alpha_sq[n] * h.d(static_cast<long>(n) - 1) == h.d(static_cast<long>(n)));
    // matched signs give J back, and every sign variant shares the moments
    const auto K = reconstruct(f, matching_signs(J));
    CHECK(K.off() == J.off());
    if (J.size() >= 2) {
      std::vector<int> flip(J.size() - 1, 1);
      flip[static_cast<std::size_t>(rng.integer(0, static_cast<int>(J.size()) - 2))] = -1;
      CHECK(moment_oracle(apply_signs(r, SignSequence(flip))).values() == f.moments().values());
    }
  }
}

TEST_CASE("property: the degree-N monic polynomial annihilates the functional") {
  // T(l) = l^N + sum chi_Nk l^k is P_N up to a constant, so <Omega, T l^m> = 0
  oracle::Rng rng(52);
  for (int t = 0; t < 40; ++t) {
    const auto J = rng.exact_matrix(static_cast<std::size_t>(rng.integer(1, 6)));
    const auto N = J.size();
    const Functional<Exact> f(moment_oracle(J));
    const auto r = reconstruct_squares(f);
    std::vector<Exact> coeffs = r.state.chi[N];
    coeffs.push_back(q(1));
    const Polynomial<Exact> T(coeffs);
    const auto cp = char_poly(J);
    CHECK(T * cp.coeffs().back() == cp);
    for (std::size_t m = 0; m <= N; ++m) CHECK(evaluate_functional(f, T * Polynomial<Exact>::monomial(q(1), m)) == q(0));
  }
}

TEST_CASE("property: float roundtrip and orthonormality of the reconstruction") {
  oracle::Rng rng(53);
  for (int t = 0; t < 60; ++t) {
    const auto J = rng.complex_matrix(static_cast<std::size_t>(rng.integer(1, 10)));
    const Functional<Complex> f(moment_oracle(J));
    const auto K = reconstruct(f, matching_signs(J));
    for (std::size_t n = 0; n < J.size(); ++n) CHECK(oracle::rel_err(K.diag()[n], J.diag()[n]) < 1e-10);
    for (std::size_t n = 0; n + 1 < J.size(); ++n) CHECK(oracle::rel_err(K.off()[n], J.off()[n]) < 1e-10);
    // <Omega, P_m P_n> = delta_mn for the reconstructed polynomials
    const auto pp = recurrence_polys(K);
    for (long m = 0; m < static_cast<long>(K.size()); ++m)
      for (long n = m; n < static_cast<long>(K.size()); ++n) {
        const Complex v = evaluate_functional(f, pp.P(m) * pp.P(n));
        CHECK(magnitude(Complex(v - Complex(m == n ? 1 : 0))) < 1e-8);
      }
  }
}

TEST_CASE("property: real moments give positive determinants") {
  oracle::Rng rng(54);
  for (int t = 0; t < 40; ++t) {
    const auto J = rng.real_matrix(static_cast<std::size_t>(rng.integer(1, 10)));
    const auto h = hankel_report(moment_oracle(J), CheckMode::Real);
    CHECK(h.verdict.kind == Verdict::Kind::RealValid);
    for (long n = 1; n < static_cast<long>(J.size()); ++n) CHECK(h.d(n).real() > 0);
  }
}
