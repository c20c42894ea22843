#include <doctest.h>

#include "jacobi/error.hpp"
#include "jacobi/linalg.hpp"
#include "oracles.hpp"

using namespace jacobi;

namespace {

Exact q(long p, long d = 1) { return Exact(mpq_class(p, d)); }
Exact gi(long re, long im) { return Exact(mpq_class(re), mpq_class(im)); }

}  // namespace

TEST_CASE("gauss rational parsing and arithmetic") {
  CHECK(GaussRational::parse_rational("3/6") == mpq_class(1, 2));
  CHECK(GaussRational::parse_rational("-0.25") == mpq_class(-1, 4));
  CHECK(GaussRational::parse_rational("1e-3") == mpq_class(1, 1000));
  CHECK(GaussRational::parse_rational(" 12 ") == mpq_class(12));
  CHECK_THROWS_AS(GaussRational::parse_rational("1/0"), Error);
  CHECK_THROWS_AS(GaussRational::parse_rational("abc"), Error);
  CHECK_THROWS_AS(GaussRational::parse_rational("1.5x"), Error);

  const Exact a = gi(1, 2), b = gi(3, -1);
  CHECK(a * b == gi(5, 5));
  CHECK((a * b) / b == a);
  CHECK(a - a == Exact(0));
  CHECK(a.conj() == gi(1, -2));
  CHECK(a.norm() == mpq_class(5));
  CHECK_THROWS_AS(a / Exact(0), Error);
}

TEST_CASE("branch square root lands in arg [0, pi)") {
  CHECK(*branch_sqrt(q(9, 4)) == q(3, 2));
  CHECK(*branch_sqrt(q(-4)) == gi(0, 2));
  CHECK(*branch_sqrt(gi(0, -2)) == gi(-1, 1));  // (-1 + i)^2 = -2i
  CHECK(*branch_sqrt(gi(3, 4)) == gi(2, 1));
  CHECK_FALSE(branch_sqrt(q(2)).has_value());
  CHECK_FALSE(branch_sqrt(gi(0, 1)).has_value());

  oracle::Rng rng(11);
  for (int t = 0; t < 200; ++t) {
    const Complex z = rng.disc(5.0);
    const Complex w = *branch_sqrt(z);
    CHECK(magnitude(Complex(w * w - z)) < 1e-30);
    CHECK(on_sqrt_branch(w));
  }
  for (int t = 0; t < 100; ++t) {
    const Exact w0 = rng.gauss_rational();
    const Exact w = *branch_sqrt(w0 * w0);
    CHECK((w == w0 || w == -w0));
    CHECK(on_sqrt_branch(w));
  }
}

TEST_CASE("rationalize recovers small fractions") {
  CHECK(rationalize(0.25, 1e-14, 1000) == mpq_class(1, 4));
  CHECK(rationalize(1.0 / 3.0, 1e-14, 1000) == mpq_class(1, 3));
  CHECK(rationalize(-2.0 / 7.0, 1e-14, 1000) == mpq_class(-2, 7));
  CHECK(rationalize(5.0, 1e-14, 1000) == mpq_class(5));
}

TEST_CASE("poly_eval examples") {
  CHECK(Polynomial<Exact>::constant(q(1))(q(5)) == q(1));
  const Polynomial<Exact> p{q(0), q(-2), q(1)};  // lambda^2 - 2 lambda
  CHECK(p(q(2)) == q(0));
  const Exact l0 = gi(3, 1);
  const auto sq = Polynomial<Exact>::linear_factor(l0) * Polynomial<Exact>::linear_factor(l0);
  CHECK(sq(l0) == q(0));
}

TEST_CASE("poly_arith examples and normalization") {
  const Polynomial<Exact> p{q(0), q(-2), q(1)};
  CHECK(p.derivative() == Polynomial<Exact>{q(-2), q(2)});
  const auto f = Polynomial<Exact>::linear_factor(q(1));
  CHECK(f * f == Polynomial<Exact>{q(1), q(-2), q(1)});
  CHECK((p - p).is_zero());
  CHECK((p - p).degree() == -1);
  CHECK(Polynomial<Exact>{q(1), q(0), q(0)}.degree() == 0);
  CHECK(Polynomial<Exact>::constant(q(7)).derivative().is_zero());

  oracle::Rng rng(3);
  for (int t = 0; t < 50; ++t) {
    std::vector<Exact> a, b;
    const int da = rng.integer(0, 5), db = rng.integer(0, 5);
    for (int i = 0; i <= da; ++i) a.push_back(rng.gauss_rational());
    for (int i = 0; i <= db; ++i) b.push_back(rng.gauss_rational());
    a.back() = rng.nonzero_gauss_rational();
    b.back() = rng.nonzero_gauss_rational();
    const Polynomial<Exact> pa(a), pb(b);
    const Exact z = rng.gauss_rational();
    CHECK((pa * pb)(z) == pa(z) * pb(z));
    CHECK((pa + pb)(z) == pa(z) + pb(z));
    CHECK((pa * pb).degree() == pa.degree() + pb.degree());
    if (pa.degree() >= 1) CHECK(pa.derivative().degree() == pa.degree() - 1);
  }
}

TEST_CASE("divide_linear") {
  const Polynomial<Exact> p{q(-6), q(11), q(-6), q(1)};  // (l-1)(l-2)(l-3)
  auto [quot, rem] = divide_linear(p, q(2));
  CHECK(rem == q(0));
  CHECK(quot == Polynomial<Exact>{q(3), q(-4), q(1)});
  auto [quot2, rem2] = divide_linear(p, q(0));
  CHECK(rem2 == q(-6));
}

TEST_CASE("poly_roots examples") {
  {
    const auto r = poly_roots(Polynomial<Complex>{Complex(-1), Complex(0), Complex(1)});
    REQUIRE(r.size() == 2);
    CHECK(magnitude(Complex(r[0].center + Complex(1))) < 1e-12);
    CHECK(magnitude(Complex(r[1].center - Complex(1))) < 1e-12);
    CHECK(r[0].multiplicity == 1);
  }
  {
    const auto f = Polynomial<Complex>::linear_factor(Complex(2));
    const auto r = poly_roots(f * f);
    REQUIRE(r.size() == 1);
    CHECK(r[0].multiplicity == 2);
    CHECK(r[0].members.size() == 2);
    CHECK(magnitude(Complex(r[0].center - Complex(2))) < 1e-12);
  }
  {
    const std::vector<Complex> want{Complex(0, -1), Complex(0, 1), Complex(1), Complex(2), Complex(3)};
    Polynomial<Complex> p = Polynomial<Complex>::constant(Complex(1));
    for (const auto& w : want) p = p * Polynomial<Complex>::linear_factor(w);
    const auto r = poly_roots(p);
    REQUIRE(r.size() == 5);
    // sorted by (re, im)
    for (std::size_t i = 0; i < 5; ++i) CHECK(magnitude(Complex(r[i].center - want[i])) < 1e-10);
  }
  CHECK_THROWS_AS(poly_roots(Polynomial<Complex>::constant(Complex(3))), Error);
}

TEST_CASE("exact rooting") {
  const Polynomial<Exact> p =
      Polynomial<Exact>::linear_factor(q(1, 3)) * Polynomial<Exact>::linear_factor(q(1, 3)) *
      Polynomial<Exact>::linear_factor(gi(2, -5));
  const auto r = find_roots(p);
  REQUIRE(r.size() == 2);
  CHECK(r[0].center == q(1, 3));
  CHECK(r[0].multiplicity == 2);
  CHECK(r[1].center == gi(2, -5));

  const Polynomial<Exact> irr{q(-2), q(0), q(1)};  // roots +-sqrt 2
  try {
    find_roots(irr);
    FAIL("expected ExactRootingUnavailable");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ExactRootingUnavailable);
  }
}

TEST_CASE("property: roots of random products of linear factors") {
  oracle::Rng rng(101);
  int checked = 0;
  for (int t = 0; t < 120; ++t) {
    const int n = rng.integer(1, 9);
    std::vector<Complex> roots;
    while (static_cast<int>(roots.size()) < n) {
      const Complex z = rng.disc(3.0);
      bool far = true;
      for (const auto& r : roots) far = far && magnitude(Complex(z - r)) > 1e-2;
      if (far) roots.push_back(z);
    }
    // one repeated root now and then
    if (n >= 3 && t % 3 == 0) roots[1] = roots[0];
    Polynomial<Complex> p = Polynomial<Complex>::constant(rng.disc(2.0) + Complex(0.5));
    for (const auto& r : roots) p = p * Polynomial<Complex>::linear_factor(r);
    const double tol = 1e-8;
    const auto clusters = poly_roots(p, RootOptions{.tol = tol});
    int total = 0;
    double max_coeff = 0.0;
    for (const auto& c : p.coeffs()) max_coeff = std::max(max_coeff, magnitude(c));
    for (const auto& c : clusters) {
      total += c.multiplicity;
      int expected = 0;
      for (const auto& r : roots)
        if (magnitude(Complex(r - c.center)) < 1e-6) ++expected;
      CHECK(expected == c.multiplicity);
      const double bound = tol * (p.degree() + 1) * max_coeff * std::pow(std::max(1.0, magnitude(c.center)), p.degree());
      CHECK(magnitude(p(c.center)) <= bound);
    }
    CHECK(total == p.degree());
    for (std::size_t i = 0; i < clusters.size(); ++i)
      for (std::size_t j = i + 1; j < clusters.size(); ++j)
        CHECK(magnitude(Complex(clusters[i].center - clusters[j].center)) > tol);
    ++checked;
  }
  CHECK(checked == 120);
}

TEST_CASE("dense determinant and solve against oracles") {
  oracle::Rng rng(5);
  for (int t = 0; t < 40; ++t) {
    const std::size_t n = static_cast<std::size_t>(rng.integer(1, 5));
    DenseMatrix<Exact> a(n, n);
    oracle::Dense<Exact> o(n, std::vector<Exact>(n));
    std::vector<Exact> b(n);
    for (std::size_t i = 0; i < n; ++i) {
      b[i] = rng.gauss_rational();
      for (std::size_t j = 0; j < n; ++j) o[i][j] = a(i, j) = rng.integer(0, 3) ? rng.gauss_rational() : Exact(0);
    }
    CHECK(determinant(a) == oracle::laplace_det(o));
    SolveInfo info;
    const auto x = solve(a, b, &info);
    const auto y = oracle::gauss_solve(o, b);
    CHECK(info.singular == y.empty());
    if (!y.empty()) CHECK(x == y);
  }
  for (int t = 0; t < 40; ++t) {
    const std::size_t n = static_cast<std::size_t>(rng.integer(1, 6));
    DenseMatrix<Complex> a(n, n);
    oracle::Dense<Complex> o(n, std::vector<Complex>(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) o[i][j] = a(i, j) = rng.disc(2.0);
    CHECK(oracle::rel_err(determinant(a), oracle::laplace_det(o)) < 1e-28);
  }
}
