#include "cli.hpp"

#include <algorithm>
#include <fstream>
#include <random>

#include <CLI11.hpp>

#include "document.hpp"
#include "jacobi/error.hpp"

namespace jacobi::cli {

namespace {

struct Globals {
  std::string mode;  // empty: take the document's mode
  double tol = 1e-8;
  std::string output;
  unsigned long long seed = 1;
};

class Context {
 public:
  Context(const Globals& g, std::ostream& out, std::ostream& err) : g_(g), out_(out), err_(err) {}

  const Globals& globals() const { return g_; }
  double tol() const { return g_.tol; }
  std::ostream& err() { return err_; }

  Arith arith(const Document* doc) const {
    if (!g_.mode.empty()) return parse_arith(g_.mode);
    return doc ? doc->mode : Arith::Float;
  }

  void emit(const json& j) { write(g_.output, j); }

  void write(const std::string& path, const json& j) {
    const std::string text = j.dump(2) + "\n";
    if (path.empty() || path == "-") {
      out_ << text;
      return;
    }
    std::ofstream f(path);
    if (!f) fail(ErrorKind::Parse, "cannot write '" + path + "'");
    f << text;
  }

  void note(const std::string& msg) { err_ << "note: " << msg << "\n"; }

 private:
  Globals g_;
  std::ostream& out_;
  std::ostream& err_;
};

template <ScalarType T>
double rel_dev(const T& a, const T& b) {
  return magnitude(T(a - b)) / std::max(1.0, magnitude(a));
}

// Float results of real problems carry rounding noise in the imaginary parts.
JacobiMatrix<Complex> drop_imaginary(const JacobiMatrix<Complex>& J) {
  std::vector<Complex> d, o;
  for (const auto& x : J.diag()) d.push_back(real_part(x));
  for (const auto& x : J.off()) o.push_back(real_part(x));
  return make_jacobi(std::move(d), std::move(o));
}
JacobiMatrix<Exact> drop_imaginary(const JacobiMatrix<Exact>& J) { return J; }

SignSequence signs_for(const std::string& text, std::size_t n) {
  if (text.empty()) return SignSequence::all_plus(n - 1);
  auto s = SignSequence::parse(text);
  if (s.size() + 1 != n)
    fail(ErrorKind::SizeMismatch,
         "sign sequence needs " + std::to_string(n - 1) + " entries, got " + std::to_string(s.size()));
  return s;
}

// ---- forward ----------------------------------------------------------------

template <ScalarType T>
int forward(Context& ctx, const Document& doc, const std::string& moments_path) {
  const auto J = matrix_from<T>(doc);
  const auto r = forward_spectral_data(J, ctx.tol());
  if (r.ill_conditioned)
    ctx.note("partial-fraction system is ill-conditioned (condition " + std::to_string(r.condition) + ")");
  ctx.emit(to_json(spectral_document(r.data)));
  if (!moments_path.empty()) ctx.write(moments_path, to_json(moments_document(moment_oracle(J))));
  return kExitOk;
}

// ---- inverse ----------------------------------------------------------------

struct InverseArgs {
  std::string signs;
  bool all_signs = false;
  bool real = false;
};

template <ScalarType T>
int inverse(Context& ctx, const Document& doc, const InverseArgs& a) {
  const auto f = functional_from<T>(doc);
  const std::size_t N = f.size();
  const ReconstructOptions opts{.tol = ctx.tol()};
  if (a.real) {
    const Verdict v = validate(f, CheckMode::Real, ctx.tol());
    if (!v.valid()) fail(ErrorKind::ValidationFailed, v.reason);
  }
  auto finish = [&](JacobiMatrix<T> J) { return a.real ? drop_imaginary(J) : J; };

  if (a.all_signs || a.signs == "all") {
    json arr = json::array();
    for (auto& J : reconstruct_all(f, opts)) arr.push_back(to_json(matrix_document(finish(std::move(J)))));
    ctx.emit(arr);
    return kExitOk;
  }
  const auto signs = signs_for(a.signs, N);
  const auto* sd = f.spectral_data();
  auto J = a.real && sd ? reconstruct_real(*sd, signs, opts) : reconstruct(f, signs, opts);
  ctx.emit(to_json(matrix_document(finish(std::move(J)))));
  return kExitOk;
}

// ---- validate ---------------------------------------------------------------

template <ScalarType T>
int validate_cmd(Context& ctx, const Document& doc, CheckMode check) {
  Verdict verdict;
  MomentSequence<T> ms = [&] {
    if (doc.kind == "matrix") return moment_oracle(matrix_from<T>(doc));
    return functional_from<T>(doc).moments();
  }();
  const auto rep = hankel_report(ms, check, ctx.tol());
  if (doc.kind == "matrix") {
    verdict = rep.verdict;
  } else {
    verdict = validate(functional_from<T>(doc), check, ctx.tol());
  }
  json D = json::array(), Delta = json::array();
  for (const auto& x : rep.D) D.push_back(emit_scalar(x));
  for (const auto& x : rep.Delta) Delta.push_back(emit_scalar(x));
  json payload{{"check", check == CheckMode::Real ? "real" : "complex"},
               {"D", D},
               {"Delta", Delta},
               {"verdict", std::string(to_string(verdict.kind))},
               {"reason", verdict.reason},
               {"ill_conditioned", rep.ill_conditioned}};
  if (!rep.pivot_ratio.empty()) payload["pivot_ratio"] = rep.pivot_ratio;
  ctx.emit(json{{"kind", "hankel_report"}, {"n", ms.size()}, {"mode", to_string(arith_of<T>())}, {"payload", payload}});
  if (!verdict.valid()) {
    ctx.err() << "invalid: " << verdict.reason << "\n";
    return kExitInvalid;
  }
  return kExitOk;
}

// ---- roundtrip --------------------------------------------------------------

template <ScalarType T>
int roundtrip(Context& ctx, const Document& doc) {
  const auto J = matrix_from<T>(doc);
  std::string route = "spectral_data";
  std::optional<Functional<T>> f;
  try {
    f.emplace(forward_spectral_data(J, ctx.tol()).data);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::ExactRootingUnavailable) throw;
    ctx.note(std::string(e.what()) + "; using the moment route");
    route = "moments";
    f.emplace(moment_oracle(J));
  }
  const auto r = reconstruct_squares(*f, ReconstructOptions{.tol = ctx.tol()});
  double dev = 0.0;
  for (std::size_t n = 0; n < J.size(); ++n) dev = std::max(dev, rel_dev(J.diag()[n], r.diag[n]));
  for (std::size_t n = 0; n + 1 < J.size(); ++n)
    dev = std::max(dev, rel_dev(T(J.off()[n] * J.off()[n]), r.off_squared[n]));
  const bool ok = dev <= ctx.tol();
  ctx.emit(json{{"kind", "roundtrip_report"},
                {"n", J.size()},
                {"mode", to_string(arith_of<T>())},
                {"payload",
                 {{"route", route},
                  {"signs", matching_signs(J).str()},
                  {"deviation", dev},
                  {"tol", ctx.tol()},
                  {"within_tol", ok}}}});
  if (!ok) {
    ctx.err() << "roundtrip deviation " << dev << " exceeds tol " << ctx.tol() << "\n";
    return kExitRoundtrip;
  }
  return kExitOk;
}

// ---- synth ------------------------------------------------------------------

struct SynthArgs {
  std::string eigenvalues;
  std::string weights;
  std::string chains_path;
  bool complex_weights = false;
  std::string signs;
};

template <ScalarType T>
std::vector<std::vector<T>> read_chains(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::Parse, "cannot open '" + path + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    fail(ErrorKind::Parse, "'" + path + "': " + e.what());
  }
  if (!j.is_array()) fail(ErrorKind::Parse, "chains file must hold an array of chains");
  std::vector<std::vector<T>> out;
  for (const auto& c : j) {
    if (!c.is_array() || c.empty()) fail(ErrorKind::Parse, "each chain must be a nonempty array");
    std::vector<T> chain;
    for (const auto& b : c) chain.push_back(parse_scalar<T>(b));
    out.push_back(std::move(chain));
  }
  return out;
}

template <ScalarType T>
int synth(Context& ctx, const SynthArgs& a) {
  if (a.eigenvalues.empty()) fail(ErrorKind::InvalidArgument, "synth needs --eigenvalues");
  if (a.weights.empty() == a.chains_path.empty())
    fail(ErrorKind::InvalidArgument, "synth needs exactly one of --weights and --chains");
  const auto lambdas = parse_scalar_list<T>(a.eigenvalues);
  for (const auto& l : lambdas)
    if (!is_real(l)) fail(ErrorKind::ValidationFailed, "eigenvalue " + to_string(l) + " is not real");

  std::vector<std::vector<T>> chains;
  if (!a.chains_path.empty()) {
    chains = read_chains<T>(a.chains_path);
  } else {
    for (auto& w : parse_scalar_list<T>(a.weights)) chains.push_back({std::move(w)});
  }
  if (chains.size() != lambdas.size())
    fail(ErrorKind::SizeMismatch, std::to_string(lambdas.size()) + " eigenvalues but " +
                                      std::to_string(chains.size()) + " weights/chains");
  std::vector<SpectralEntry<T>> entries;
  for (std::size_t k = 0; k < lambdas.size(); ++k) entries.push_back({lambdas[k], chains[k]});
  const SpectralData<T> sd(std::move(entries));
  const auto signs = signs_for(a.signs, sd.size());
  const ReconstructOptions opts{.tol = ctx.tol()};

  const bool real = a.chains_path.empty() && !a.complex_weights;
  const auto J = real ? drop_imaginary(reconstruct_real(sd, signs, opts)) : reconstruct(Functional<T>(sd), signs, opts);

  // The spectrum is checked by running the forward problem on the result.
  const auto Jf = matrix_from<Complex>(matrix_document(J));
  const auto fwd = forward_spectral_data(Jf, ctx.tol());
  std::vector<std::pair<std::complex<double>, std::size_t>> want, got;
  for (const auto& e : sd.entries()) want.emplace_back(to_std(e.lambda), e.chain.size());
  for (const auto& e : fwd.data.entries()) got.emplace_back(to_std(e.lambda), e.chain.size());
  auto by_re = [](const auto& x, const auto& y) { return x.first.real() < y.first.real(); };
  std::sort(want.begin(), want.end(), by_re);
  std::sort(got.begin(), got.end(), by_re);
  bool same = want.size() == got.size();
  for (std::size_t k = 0; same && k < want.size(); ++k)
    same = want[k].second == got[k].second &&
           std::abs(want[k].first - got[k].first) <= ctx.tol() * std::max(1.0, std::abs(want[k].first));
  if (!same) fail(ErrorKind::NonConvergence, "synthesized matrix does not reproduce the requested spectrum");

  ctx.emit(to_json(matrix_document(J)));
  return kExitOk;
}

// ---- selftest ---------------------------------------------------------------

int selftest(Context& ctx, int count) {
  std::mt19937_64 rng(ctx.globals().seed);
  std::uniform_int_distribution<int> num(-9, 9), den(1, 9), size(1, 6);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  auto rational = [&] { return mpq_class(num(rng), den(rng)); };
  int failures = 0;
  double worst = 0.0;

  for (int t = 0; t < count; ++t) {
    const auto N = static_cast<std::size_t>(size(rng));
    std::vector<Exact> d, o;
    for (std::size_t i = 0; i < N; ++i) d.emplace_back(rational(), rational());
    while (o.size() + 1 < N) {
      Exact a(rational(), rational());
      if (!a.is_zero()) o.push_back(a);
    }
    const auto J = make_jacobi(d, o);
    try {
      const auto r = reconstruct_squares(Functional<Exact>(moment_oracle(J)));
      bool ok = r.diag == d;
      for (std::size_t n = 0; ok && n + 1 < N; ++n) ok = r.off_squared[n] == o[n] * o[n];
      if (!ok) ++failures;
    } catch (const Error&) {
      ++failures;
    }
  }
  for (int t = 0; t < count; ++t) {
    const auto N = static_cast<std::size_t>(size(rng)) + 1;
    std::vector<Complex> d, o;
    for (std::size_t i = 0; i < N; ++i) d.emplace_back(unit(rng), unit(rng));
    for (std::size_t i = 0; i + 1 < N; ++i) o.emplace_back(0.5 + 0.5 * std::abs(unit(rng)), unit(rng));
    const auto J = make_jacobi(d, o);
    try {
      const auto fwd = forward_spectral_data(J, ctx.tol());
      const auto r = reconstruct_squares(Functional<Complex>(fwd.data));
      double dev = 0.0;
      for (std::size_t n = 0; n < N; ++n) dev = std::max(dev, rel_dev(d[n], r.diag[n]));
      for (std::size_t n = 0; n + 1 < N; ++n) dev = std::max(dev, rel_dev(Complex(o[n] * o[n]), r.off_squared[n]));
      worst = std::max(worst, dev);
      if (dev > 1e-7) ++failures;
    } catch (const Error&) {
      ++failures;
    }
  }
  ctx.emit(json{{"kind", "selftest_report"},
                {"payload",
                 {{"seed", ctx.globals().seed},
                  {"cases", 2 * count},
                  {"failures", failures},
                  {"max_float_deviation", worst}}}});
  return failures == 0 ? kExitOk : kExitRoundtrip;
}

// Runs body<Complex> or body<Exact>; exact runs that hit a non-rational
// eigenvalue or square root are redone in float.
template <class F>
int dispatch(Context& ctx, Arith arith, F&& body) {
  if (arith == Arith::Float) return body(Complex{});
  try {
    return body(Exact{});
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::ExactRootingUnavailable) throw;
    ctx.note(std::string(e.what()) + "; falling back to float mode");
    return body(Complex{});
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Forward and inverse spectral problems for complex Jacobi matrices", "jacobi-spectral"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--mode", g.mode, "Arithmetic: float or exact (default: the document's mode, else float)")
      ->check(CLI::IsMember({"float", "exact"}));
  app.add_option("--tol", g.tol, "Tolerance for clustering, zero tests and comparisons")->check(CLI::PositiveNumber);
  app.add_option("--output", g.output, "Write the result here instead of standard output");
  app.add_option("--seed", g.seed, "Seed for selftest");

  std::string input;
  std::string moments_path;
  auto* fwd = app.add_subcommand("forward", "Matrix -> spectral data");
  fwd->add_option("input", input, "Matrix document ('-' for standard input)")->required();
  fwd->add_option("--emit-moments", moments_path, "Also write the moments document to this path");

  InverseArgs inv_args;
  auto* inv = app.add_subcommand("inverse", "Spectral data or moments -> matrix");
  inv->add_option("input", input, "Spectral data or moments document")->required();
  auto* signs_opt = inv->add_option("--signs", inv_args.signs, "Sign sequence over {+,-} of length N-1, or 'all'");
  inv->add_flag("--all-signs", inv_args.all_signs, "Emit all 2^(N-1) sign variants")->excludes(signs_opt);
  inv->add_flag("--real", inv_args.real, "Require real data and return a real matrix");

  std::string check = "complex";
  auto* val = app.add_subcommand("validate", "Hankel determinants and validity verdict");
  val->add_option("input", input, "Any document")->required();
  val->add_option("--mode", check, "Which conditions to test: complex or real")->check(CLI::IsMember({"complex", "real"}));

  auto* rt = app.add_subcommand("roundtrip", "Matrix -> spectral data -> matrix, report the deviation");
  rt->add_option("input", input, "Matrix document")->required();

  SynthArgs syn;
  auto* sy = app.add_subcommand("synth", "Matrix with prescribed real eigenvalues");
  sy->add_option("--eigenvalues", syn.eigenvalues, "Comma-separated real eigenvalues")->required();
  sy->add_option("--weights", syn.weights, "Comma-separated weights, one per eigenvalue");
  sy->add_option("--chains", syn.chains_path, "JSON file with one chain (array of values) per eigenvalue");
  sy->add_flag("--complex-weights", syn.complex_weights, "Allow complex weights (complex matrix output)");
  sy->add_option("--signs", syn.signs, "Sign sequence over {+,-} of length N-1");

  int count = 25;
  auto* st = app.add_subcommand("selftest", "Randomized exact and float roundtrips");
  st->add_option("--count", count, "Cases per arithmetic")->check(CLI::PositiveNumber);

  for (auto* sub : {fwd, inv, val, rt, sy, st}) sub->fallthrough();

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInvalid;
  }

  Context ctx(g, out, err);
  try {
    if (*sy) {
      return dispatch(ctx, ctx.arith(nullptr), [&](auto tag) { return synth<decltype(tag)>(ctx, syn); });
    }
    if (*st) return selftest(ctx, count);

    const Document doc = read_document(input);
    const Arith arith = ctx.arith(&doc);
    if (*fwd) return dispatch(ctx, arith, [&](auto tag) { return forward<decltype(tag)>(ctx, doc, moments_path); });
    if (*inv) return dispatch(ctx, arith, [&](auto tag) { return inverse<decltype(tag)>(ctx, doc, inv_args); });
    if (*rt) return dispatch(ctx, arith, [&](auto tag) { return roundtrip<decltype(tag)>(ctx, doc); });
    if (*val) {
      const CheckMode mode = check == "real" ? CheckMode::Real : CheckMode::Complex;
      return dispatch(ctx, arith, [&](auto tag) { return validate_cmd<decltype(tag)>(ctx, doc, mode); });
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return is_input_error(e.kind()) ? kExitInvalid : kExitNumerical;
  } catch (const json::exception& e) {
    err << "error: malformed document: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitNumerical;
  }
  return kExitInvalid;
}

}  // namespace jacobi::cli
