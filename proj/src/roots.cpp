#include "jacobi/roots.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "jacobi/error.hpp"

namespace jacobi {

namespace {

Real to_real(const mpq_class& q) {
  return Real(q.get_num().get_str()) / Real(q.get_den().get_str());
}

// p(z) and p'(z) together by Horner's rule.
void eval_with_derivative(const std::vector<Complex>& c, const Complex& z, Complex& p, Complex& dp) {
  p = Complex(0);
  dp = Complex(0);
  for (auto it = c.rbegin(); it != c.rend(); ++it) {
    dp = dp * z + p;
    p = p * z + *it;
  }
}

std::vector<RootCluster<Complex>> cluster_roots(const std::vector<Complex>& roots, double tol) {
  std::vector<RootCluster<Complex>> clusters;
  auto radius = [tol](const Complex& z) { return tol * std::max(1.0, magnitude(z)); };
  auto recenter = [](RootCluster<Complex>& c) {
    Complex sum(0);
    for (const auto& m : c.members) sum += m;
    c.center = sum / Complex(static_cast<long>(c.members.size()));
    c.multiplicity = static_cast<int>(c.members.size());
  };
  for (const auto& r : roots) {
    bool placed = false;
    for (auto& c : clusters) {
      if (magnitude(r - c.center) <= radius(c.center)) {
        c.members.push_back(r);
        recenter(c);
        placed = true;
        break;
      }
    }
    if (!placed) clusters.push_back({r, 1, {r}});
  }
  // Merging can move centers into range of each other; repeat until stable.
  for (bool merged = true; merged;) {
    merged = false;
    for (std::size_t i = 0; i < clusters.size() && !merged; ++i) {
      for (std::size_t j = i + 1; j < clusters.size() && !merged; ++j) {
        const double rad = std::max(radius(clusters[i].center), radius(clusters[j].center));
        if (magnitude(clusters[i].center - clusters[j].center) <= rad) {
          auto& keep = clusters[i];
          keep.members.insert(keep.members.end(), clusters[j].members.begin(), clusters[j].members.end());
          recenter(keep);
          clusters.erase(clusters.begin() + static_cast<std::ptrdiff_t>(j));
          merged = true;
        }
      }
    }
  }
  std::sort(clusters.begin(), clusters.end(),
            [](const auto& a, const auto& b) { return lex_less(a.center, b.center); });
  return clusters;
}

}  // namespace

Polynomial<Complex> to_float(const Polynomial<Exact>& p) {
  std::vector<Complex> c;
  c.reserve(p.coeffs().size());
  for (const auto& x : p.coeffs()) c.emplace_back(to_real(x.real()), to_real(x.imag()));
  return Polynomial<Complex>(std::move(c));
}

std::vector<RootCluster<Complex>> poly_roots(const Polynomial<Complex>& p, const RootOptions& opts) {
  const int n = p.degree();
  if (n < 1) fail(ErrorKind::InvalidArgument, "poly_roots: degree must be at least 1");
  const auto& c = p.coeffs();
  const Complex lead = c.back();

  if (n == 1) return cluster_roots({-c[0] / lead}, opts.tol);

  double bound = 0.0;
  for (int i = 0; i < n; ++i) bound = std::max(bound, magnitude(c[static_cast<std::size_t>(i)] / lead));
  const double radius = 1.0 + bound;

  std::vector<Complex> z(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    const double theta = 2.0 * std::numbers::pi * k / n + 0.4;
    z[static_cast<std::size_t>(k)] = Complex(radius * std::cos(theta), radius * std::sin(theta));
  }

  const double eps = static_cast<double>(working_epsilon());
  std::vector<bool> done(static_cast<std::size_t>(n), false);
  int remaining = n;
  for (int iter = 0; iter < opts.max_iterations && remaining > 0; ++iter) {
    for (std::size_t i = 0; i < z.size(); ++i) {
      if (done[i]) continue;
      Complex pv, dpv;
      eval_with_derivative(c, z[i], pv, dpv);
      const double scale = horner_scale(p, z[i]);
      if (magnitude(pv) <= 8.0 * n * eps * scale) {
        done[i] = true;
        --remaining;
        continue;
      }
      Complex repulsion(0);
      for (std::size_t j = 0; j < z.size(); ++j)
        if (j != i) repulsion += Complex(1) / (z[i] - z[j]);
      Complex denom = dpv - pv * repulsion;
      if (is_zero(denom)) denom = Complex(eps);
      const Complex step = pv / denom;
      z[i] -= step;
      if (magnitude(step) <= opts.step_tol * std::max(1.0, magnitude(z[i]))) {
        done[i] = true;
        --remaining;
      }
    }
  }
  if (remaining > 0)
    fail(ErrorKind::NonConvergence,
         "Aberth iteration did not converge within " + std::to_string(opts.max_iterations) + " iterations");
  return cluster_roots(z, opts.tol);
}

std::vector<RootCluster<Exact>> poly_roots_exact(const Polynomial<Exact>& p, std::span<const Exact> candidates) {
  if (p.degree() < 1) fail(ErrorKind::InvalidArgument, "poly_roots_exact: degree must be at least 1");
  Polynomial<Exact> rest = p;
  std::vector<RootCluster<Exact>> clusters;
  for (const auto& cand : candidates) {
    if (rest.degree() < 1) break;
    if (std::any_of(clusters.begin(), clusters.end(), [&](const auto& c) { return c.center == cand; })) continue;
    int mult = 0;
    while (rest.degree() >= 1) {
      auto [q, r] = divide_linear(rest, cand);
      if (!r.is_zero()) break;
      rest = std::move(q);
      ++mult;
    }
    if (mult > 0) clusters.push_back({cand, mult, {}});
  }
  if (rest.degree() >= 1)
    fail(ErrorKind::ExactRootingUnavailable,
         "polynomial has " + std::to_string(rest.degree()) + " root(s) that are not among the exact candidates");
  std::sort(clusters.begin(), clusters.end(),
            [](const auto& a, const auto& b) { return lex_less(a.center, b.center); });
  return clusters;
}

std::vector<Exact> rational_root_candidates(const Polynomial<Exact>& p, double tol) {
  std::vector<Exact> out;
  for (const auto& cl : poly_roots(to_float(p), RootOptions{.tol = tol})) {
    const auto z = to_std(cl.center);
    for (const std::int64_t max_den : {1000LL, 1000000LL, 1000000000LL}) {
      out.emplace_back(rationalize(z.real(), 1e-14, max_den), rationalize(z.imag(), 1e-14, max_den));
    }
  }
  return out;
}

}  // namespace jacobi
