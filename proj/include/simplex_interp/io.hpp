#pragma once

#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "simplex_interp/errors.hpp"
#include "simplex_interp/scalar.hpp"
#include "simplex_interp/simplex.hpp"

namespace simplex_interp {

using Json = nlohmann::ordered_json;

// Numeric report fields: {"value": exact-or-%.17g string, "decimal": number, "provenance": tag}.
inline Json field(const Rational& x, const std::string& provenance = "exact") {
  return Json{{"value", format_rational(x)}, {"decimal", to_double(x)}, {"provenance", provenance}};
}

inline Json field(double x, const std::string& provenance = "float") {
  return Json{{"value", format_decimal(x)}, {"decimal", x}, {"provenance", provenance}};
}

inline Json field(const QuadraticSurd& x, const std::string& provenance = "exact") {
  return Json{{"value", x.str()}, {"decimal", x.to_double()}, {"provenance", provenance}};
}

template <Scalar T>
Json field_of(const T& x) {
  if constexpr (is_exact_v<T>)
    return field(x, "exact");
  else
    return field(x, "float");
}

template <Scalar T>
Json point_json(const Point<T>& p) {
  Json a = Json::array();
  for (const auto& x : p) {
    if constexpr (is_exact_v<T>)
      a.push_back(format_rational(x));
    else
      a.push_back(x);
  }
  return a;
}

template <Scalar T>
Json simplex_json(const Simplex<T>& s) {
  Json v = Json::array();
  for (const auto& p : s.vertices()) v.push_back(point_json(p));
  return Json{{"n", s.dim()}, {"vertices", std::move(v)}};
}

inline Json histogram_json(const std::map<int, std::uint64_t>& h) {
  Json o = Json::object();
  for (const auto& [mu, count] : h) o["m" + std::to_string(mu)] = count;
  return o;
}

// Numbers are read through their decimal text, so 0.1 becomes 1/10 exactly.
inline Rational json_to_rational(const Json& x) {
  if (x.is_string()) return parse_rational(x.get<std::string>());
  if (x.is_number_integer()) return Rational(x.get<long long>());
  if (x.is_number()) return parse_rational(x.dump());
  throw ParseError("expected a number or a \"p/q\" string, got " + x.dump());
}

template <Scalar T>
T json_to_scalar(const Json& x) {
  if constexpr (is_exact_v<T>) {
    return json_to_rational(x);
  } else {
    if (x.is_number()) return x.get<double>();
    return to_double(json_to_rational(x));
  }
}

template <Scalar T>
std::vector<Point<T>> vertices_from_json(const Json& j) {
  // catalog and search reports nest the simplex.
  if (j.is_object() && !j.contains("vertices") && j.contains("simplex")) return vertices_from_json<T>(j["simplex"]);
  if (!j.is_object() || !j.contains("vertices") || !j["vertices"].is_array())
    throw ParseError("simplex JSON needs a \"vertices\" array");
  std::vector<Point<T>> out;
  for (const auto& row : j["vertices"]) {
    if (!row.is_array()) throw ParseError("each vertex must be an array");
    Point<T> p;
    for (const auto& x : row) p.push_back(json_to_scalar<T>(x));
    out.push_back(std::move(p));
  }
  if (j.contains("n") && !out.empty() && j["n"].get<std::size_t>() != out.front().size())
    throw DimensionMismatch("\"n\" disagrees with the vertex dimension");
  return out;
}

inline Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
}

template <Scalar T>
Simplex<T> load_simplex(const std::string& path) {
  return Simplex<T>(vertices_from_json<T>(read_json_file(path)));
}

// "1,2,3/4" -> point.
template <Scalar T>
Point<T> parse_point_list(const std::string& text) {
  Point<T> p;
  std::stringstream in(text);
  std::string tok;
  while (std::getline(in, tok, ',')) {
    const Rational r = parse_rational(tok);
    if constexpr (is_exact_v<T>)
      p.push_back(r);
    else
      p.push_back(to_double(r));
  }
  return p;
}

}  // namespace simplex_interp
