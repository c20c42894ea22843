#include "document.hpp"

#include <charconv>
#include <fstream>
#include <iostream>
#include <iterator>

#include "jacobi/error.hpp"

namespace jacobi::cli {

std::string_view to_string(Arith a) { return a == Arith::Exact ? "exact" : "float"; }

Arith parse_arith(std::string_view text) {
  if (text == "float") return Arith::Float;
  if (text == "exact") return Arith::Exact;
  fail(ErrorKind::Parse, "mode must be 'float' or 'exact', got '" + std::string(text) + "'");
}

namespace {

std::size_t array_size(const json& payload, const char* field) {
  if (!payload.contains(field) || !payload[field].is_array())
    fail(ErrorKind::Parse, std::string("payload needs an array field '") + field + "'");
  return payload[field].size();
}

Real real_from_mpq(const mpq_class& q) {
  return Real(q.get_num().get_str()) / Real(q.get_den().get_str());
}

mpq_class rational_from_number(double x) {
  if (!std::isfinite(x)) fail(ErrorKind::Parse, "non-finite number");
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return GaussRational::parse_rational(std::string_view(buf, static_cast<std::size_t>(res.ptr - buf)));
}

template <ScalarType T>
T from_parts(const mpq_class& re, const mpq_class& im) {
  if constexpr (is_exact_v<T>) {
    return Exact(re, im);
  } else {
    return Complex(real_from_mpq(re), real_from_mpq(im));
  }
}

mpq_class part_from_json(const json& j) {
  if (j.is_number()) return rational_from_number(j.get<double>());
  if (j.is_string()) return GaussRational::parse_rational(j.get<std::string>());
  fail(ErrorKind::Parse, "expected a number or a rational string, got " + j.dump());
}

std::string trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return std::string(s);
}

}  // namespace

Document parse_document(const json& j) {
  if (!j.is_object()) fail(ErrorKind::Parse, "document must be a JSON object");
  for (const char* field : {"kind", "n", "payload"})
    if (!j.contains(field)) fail(ErrorKind::Parse, std::string("document is missing '") + field + "'");
  Document d;
  if (!j["kind"].is_string()) fail(ErrorKind::Parse, "'kind' must be a string");
  d.kind = j["kind"].get<std::string>();
  if (!j["n"].is_number_integer() || j["n"].get<long long>() < 1)
    fail(ErrorKind::Parse, "'n' must be a positive integer");
  d.n = j["n"].get<std::size_t>();
  d.mode = j.contains("mode") ? parse_arith(j["mode"].get<std::string>()) : Arith::Float;
  d.payload = j["payload"];
  if (!d.payload.is_object()) fail(ErrorKind::Parse, "'payload' must be an object");

  if (d.kind == "matrix") {
    if (array_size(d.payload, "diag") != d.n || array_size(d.payload, "off") + 1 != d.n)
      fail(ErrorKind::SizeMismatch, "matrix payload needs n diagonal and n - 1 off-diagonal entries");
  } else if (d.kind == "moments") {
    if (array_size(d.payload, "s") != 2 * d.n + 1)
      fail(ErrorKind::SizeMismatch, "moments payload needs 2n + 1 entries");
  } else if (d.kind == "spectral_data") {
    std::size_t total = 0;
    if (array_size(d.payload, "entries") == 0) fail(ErrorKind::Parse, "spectral data needs at least one entry");
    for (const auto& e : d.payload["entries"]) {
      if (!e.is_object() || !e.contains("lambda") || !e.contains("chain") || !e["chain"].is_array())
        fail(ErrorKind::Parse, "spectral data entries need 'lambda' and an array 'chain'");
      total += e["chain"].size();
    }
    if (total != d.n) fail(ErrorKind::SizeMismatch, "chain lengths must sum to n");
  } else {
    fail(ErrorKind::Parse, "unknown document kind '" + d.kind + "'");
  }
  return d;
}

Document read_document(const std::string& path) {
  std::string text;
  if (path == "-") {
    text.assign(std::istreambuf_iterator<char>(std::cin), {});
  } else {
    std::ifstream in(path);
    if (!in) fail(ErrorKind::Parse, "cannot open '" + path + "'");
    text.assign(std::istreambuf_iterator<char>(in), {});
  }
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(ErrorKind::Parse, "'" + path + "': " + e.what());
  }
  return parse_document(j);
}

json to_json(const Document& d) {
  return json{{"kind", d.kind}, {"n", d.n}, {"mode", to_string(d.mode)}, {"payload", d.payload}};
}

template <ScalarType T>
T parse_scalar(const json& j) {
  if (j.is_array()) {
    if (j.size() != 2) fail(ErrorKind::Parse, "complex value must be [re, im], got " + j.dump());
    return from_parts<T>(part_from_json(j[0]), part_from_json(j[1]));
  }
  return from_parts<T>(part_from_json(j), mpq_class(0));
}

template <ScalarType T>
T parse_scalar_text(std::string_view text) {
  const std::string s = trim(text);
  if (s.empty()) fail(ErrorKind::Parse, "empty value");
  if (s.back() != 'i') return from_parts<T>(GaussRational::parse_rational(s), mpq_class(0));
  const std::string body = s.substr(0, s.size() - 1);
  // Split before the sign of the imaginary part (not a leading sign, not an
  // exponent sign).
  std::size_t split = std::string::npos;
  for (std::size_t k = body.size(); k-- > 1;) {
    if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  const std::string re = split == std::string::npos ? "0" : body.substr(0, split);
  std::string im = split == std::string::npos ? body : body.substr(split);
  if (im.empty() || im == "+" || im == "-") im += "1";
  return from_parts<T>(GaussRational::parse_rational(re), GaussRational::parse_rational(im));
}

template <ScalarType T>
std::vector<T> parse_scalar_list(std::string_view text) {
  std::vector<T> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t comma = text.find(',', start);
    const auto item = text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
    out.push_back(parse_scalar_text<T>(item));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

template <ScalarType T>
json emit_scalar(const T& z) {
  if constexpr (is_exact_v<T>) {
    return json::array({z.real().get_str(), z.imag().get_str()});
  } else {
    const auto c = to_std(z);
    return json::array({c.real(), c.imag()});
  }
}

template <ScalarType T>
JacobiMatrix<T> matrix_from(const Document& d) {
  if (d.kind != "matrix") fail(ErrorKind::Parse, "expected a matrix document, got '" + d.kind + "'");
  std::vector<T> diag, off;
  for (const auto& x : d.payload["diag"]) diag.push_back(parse_scalar<T>(x));
  for (const auto& x : d.payload["off"]) off.push_back(parse_scalar<T>(x));
  return make_jacobi(std::move(diag), std::move(off));
}

template <ScalarType T>
Functional<T> functional_from(const Document& d) {
  if (d.kind == "moments") {
    std::vector<T> s;
    for (const auto& x : d.payload["s"]) s.push_back(parse_scalar<T>(x));
    return Functional<T>(MomentSequence<T>(std::move(s)));
  }
  if (d.kind == "spectral_data") {
    std::vector<SpectralEntry<T>> entries;
    for (const auto& e : d.payload["entries"]) {
      SpectralEntry<T> entry{parse_scalar<T>(e["lambda"]), {}};
      for (const auto& b : e["chain"]) entry.chain.push_back(parse_scalar<T>(b));
      entries.push_back(std::move(entry));
    }
    return Functional<T>(SpectralData<T>(std::move(entries)));
  }
  fail(ErrorKind::Parse, "expected a spectral_data or moments document, got '" + d.kind + "'");
}

template <ScalarType T>
Document matrix_document(const JacobiMatrix<T>& J) {
  json diag = json::array(), off = json::array();
  for (const auto& x : J.diag()) diag.push_back(emit_scalar(x));
  for (const auto& x : J.off()) off.push_back(emit_scalar(x));
  return {"matrix", J.size(), arith_of<T>(), json{{"diag", diag}, {"off", off}}};
}

template <ScalarType T>
Document spectral_document(const SpectralData<T>& sd) {
  json entries = json::array();
  for (const auto& e : sd.entries()) {
    json chain = json::array();
    for (const auto& b : e.chain) chain.push_back(emit_scalar(b));
    entries.push_back(json{{"lambda", emit_scalar(e.lambda)}, {"chain", chain}});
  }
  return {"spectral_data", sd.size(), arith_of<T>(), json{{"entries", entries}}};
}

template <ScalarType T>
Document moments_document(const MomentSequence<T>& ms) {
  json s = json::array();
  for (const auto& x : ms.values()) s.push_back(emit_scalar(x));
  return {"moments", ms.size(), arith_of<T>(), json{{"s", s}}};
}

#define DOCUMENT_INSTANTIATE(T)                                              \
  template T parse_scalar<T>(const json&);                                   \
  template T parse_scalar_text<T>(std::string_view);                         \
  template std::vector<T> parse_scalar_list<T>(std::string_view);            \
  template json emit_scalar<T>(const T&);                                    \
  template JacobiMatrix<T> matrix_from<T>(const Document&);                  \
  template Functional<T> functional_from<T>(const Document&);                \
  template Document matrix_document<T>(const JacobiMatrix<T>&);              \
  template Document spectral_document<T>(const SpectralData<T>&);            \
  template Document moments_document<T>(const MomentSequence<T>&);

DOCUMENT_INSTANTIATE(Complex)
DOCUMENT_INSTANTIATE(Exact)

}  // namespace jacobi::cli
