#include <complex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "jacobi/error.hpp"
#include "jacobi/inverse.hpp"

namespace py = pybind11;
using namespace jacobi;

namespace {

using cd = std::complex<double>;
using CVec = std::vector<cd>;
using Entry = std::pair<cd, CVec>;
using Matrix = std::pair<CVec, CVec>;

Complex in(cd z) { return Complex(z.real(), z.imag()); }

std::vector<Complex> in(const CVec& v) {
  std::vector<Complex> out;
  out.reserve(v.size());
  for (const auto& z : v) out.push_back(in(z));
  return out;
}

CVec out(const std::vector<Complex>& v) {
  CVec r;
  r.reserve(v.size());
  for (const auto& z : v) r.push_back(to_std(z));
  return r;
}

JacobiMatrix<Complex> matrix(const CVec& diag, const CVec& off) { return make_jacobi(in(diag), in(off)); }

Matrix out(const JacobiMatrix<Complex>& J) { return {out(J.diag()), out(J.off())}; }

SpectralData<Complex> spectral(const std::vector<Entry>& entries) {
  std::vector<SpectralEntry<Complex>> sd;
  for (const auto& [l, chain] : entries) sd.push_back({in(l), in(chain)});
  return SpectralData<Complex>(std::move(sd));
}

std::vector<Entry> out(const SpectralData<Complex>& sd) {
  std::vector<Entry> r;
  for (const auto& e : sd.entries()) r.emplace_back(to_std(e.lambda), out(e.chain));
  return r;
}

SignSequence signs_for(const std::optional<std::string>& text, std::size_t N) {
  if (!text) return SignSequence::all_plus(N - 1);
  return SignSequence::parse(*text);
}

CheckMode check_mode(const std::string& mode) {
  if (mode == "complex") return CheckMode::Complex;
  if (mode == "real") return CheckMode::Real;
  fail(ErrorKind::InvalidArgument, "mode must be 'complex' or 'real'");
}

py::dict report(const Functional<Complex>& f, CheckMode mode, double tol) {
  const auto h = hankel_report(f.moments(), mode, tol);
  const auto v = validate(f, mode, tol);
  py::dict d;
  d["verdict"] = std::string(to_string(v.kind));
  d["valid"] = v.valid();
  d["reason"] = v.reason;
  d["D"] = out(h.D);
  d["Delta"] = out(h.Delta);
  d["pivot_ratio"] = h.pivot_ratio;
  d["ill_conditioned"] = h.ill_conditioned;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Forward and inverse spectral problems for complex Jacobi matrices (float backend).";

  auto err = py::register_exception<Error>(m, "JacobiError", PyExc_ValueError);
  (void)err;

  m.def(
      "char_poly", [](const CVec& diag, const CVec& off) { return out(char_poly(matrix(diag, off)).coeffs()); },
      py::arg("diag"), py::arg("off"), "Coefficients of det(J - lambda I), constant term first.");

  m.def(
      "moments", [](const CVec& diag, const CVec& off) { return out(moment_oracle(matrix(diag, off)).values()); },
      py::arg("diag"), py::arg("off"), "s_l = (J^l)_00 for l = 0..2N.");

  m.def(
      "forward",
      [](const CVec& diag, const CVec& off, double tol) {
        return out(forward_spectral_data(matrix(diag, off), tol).data);
      },
      py::arg("diag"), py::arg("off"), py::arg("tol") = 1e-8,
      "Eigenvalues with their normalizing chains, as [(lambda, [beta_1, ...]), ...].");

  m.def(
      "moments_from_spectral", [](const std::vector<Entry>& sd) { return out(moments_from_spectral_data(spectral(sd)).values()); },
      py::arg("entries"));

  m.def(
      "validate_moments",
      [](const CVec& s, const std::string& mode, double tol) {
        return report(Functional<Complex>(MomentSequence<Complex>(in(s))), check_mode(mode), tol);
      },
      py::arg("s"), py::arg("mode") = "complex", py::arg("tol") = 1e-8);

  m.def(
      "validate_spectral",
      [](const std::vector<Entry>& sd, const std::string& mode, double tol) {
        return report(Functional<Complex>(spectral(sd)), check_mode(mode), tol);
      },
      py::arg("entries"), py::arg("mode") = "complex", py::arg("tol") = 1e-8);

  m.def(
      "reconstruct_moments",
      [](const CVec& s, const std::optional<std::string>& signs, double tol) {
        const Functional<Complex> f{MomentSequence<Complex>(in(s))};
        return out(reconstruct(f, signs_for(signs, f.size()), ReconstructOptions{.tol = tol}));
      },
      py::arg("s"), py::arg("signs") = py::none(), py::arg("tol") = 1e-8);

  m.def(
      "reconstruct_spectral",
      [](const std::vector<Entry>& sd, const std::optional<std::string>& signs, double tol) {
        const Functional<Complex> f{spectral(sd)};
        return out(reconstruct(f, signs_for(signs, f.size()), ReconstructOptions{.tol = tol}));
      },
      py::arg("entries"), py::arg("signs") = py::none(), py::arg("tol") = 1e-8);

  m.def(
      "reconstruct_all_moments",
      [](const CVec& s, double tol) {
        std::vector<Matrix> r;
        for (const auto& J : reconstruct_all(Functional<Complex>(MomentSequence<Complex>(in(s))), ReconstructOptions{.tol = tol}))
          r.push_back(out(J));
        return r;
      },
      py::arg("s"), py::arg("tol") = 1e-8);

  m.def(
      "reconstruct_real",
      [](const std::vector<Entry>& sd, const std::optional<std::string>& signs, double tol) {
        const auto data = spectral(sd);
        return out(reconstruct_real(data, signs_for(signs, data.size()), ReconstructOptions{.tol = tol}));
      },
      py::arg("entries"), py::arg("signs") = py::none(), py::arg("tol") = 1e-8);
}
