#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "jacobi/inverse.hpp"

namespace jacobi::cli {

using json = nlohmann::json;

enum class Arith { Float, Exact };

using jacobi::to_string;
std::string_view to_string(Arith a);
Arith parse_arith(std::string_view text);

/// {"kind", "n", "mode", "payload"} with kind in matrix | spectral_data |
/// moments. Shape agreement between n and the payload is checked on parse.
struct Document {
  std::string kind;
  std::size_t n = 0;
  Arith mode = Arith::Float;
  json payload;
};

Document parse_document(const json& j);
Document read_document(const std::string& path);  // "-" reads standard input
json to_json(const Document& d);

/// Scalars: a number, a string ("p/q", "-3", "0.25"), or [re, im] with
/// either kind of part. In exact mode JSON numbers are read through their
/// shortest decimal form, so 0.1 means 1/10.
template <ScalarType T>
T parse_scalar(const json& j);

/// Text form used on the command line: "3", "-1/2", "0.25+0.5i", "2i".
template <ScalarType T>
T parse_scalar_text(std::string_view text);

/// Comma-separated list of parse_scalar_text values.
template <ScalarType T>
std::vector<T> parse_scalar_list(std::string_view text);

/// Float: [re, im] as doubles. Exact: ["p/q", "r/s"].
template <ScalarType T>
json emit_scalar(const T& z);

template <ScalarType T>
JacobiMatrix<T> matrix_from(const Document& d);

/// Spectral data or moments document.
template <ScalarType T>
Functional<T> functional_from(const Document& d);

template <ScalarType T>
Document matrix_document(const JacobiMatrix<T>& J);
template <ScalarType T>
Document spectral_document(const SpectralData<T>& sd);
template <ScalarType T>
Document moments_document(const MomentSequence<T>& ms);

template <ScalarType T>
constexpr Arith arith_of() {
  return is_exact_v<T> ? Arith::Exact : Arith::Float;
}

}  // namespace jacobi::cli
