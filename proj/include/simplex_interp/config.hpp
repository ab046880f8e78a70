#pragma once

#include <cstdint>
#include <fstream>
#include <string>

#include "simplex_interp/errors.hpp"

namespace simplex_interp {

enum class Arithmetic { rational, floating };
enum class OutputFormat { json, csv, table };

struct Config {
  Arithmetic arithmetic = Arithmetic::rational;
  std::size_t enum_cap_n = 24;
  std::uint64_t mc_samples = 1'000'000;
  std::uint64_t seed = 1;
  double tolerance = 1e-9;
  double tie_tolerance = 1e-9;
  unsigned threads = 0;  // 0: SIMPLEX_INTERP_THREADS or hardware concurrency
  OutputFormat format = OutputFormat::json;
};

inline Arithmetic parse_arithmetic(const std::string& s) {
  if (s == "rational" || s == "exact") return Arithmetic::rational;
  if (s == "float" || s == "double") return Arithmetic::floating;
  throw ParseError("arithmetic must be 'rational' or 'float', got '" + s + "'");
}

inline OutputFormat parse_format(const std::string& s) {
  if (s == "json") return OutputFormat::json;
  if (s == "csv") return OutputFormat::csv;
  if (s == "table") return OutputFormat::table;
  throw ParseError("format must be json, csv or table, got '" + s + "'");
}

namespace detail {

inline std::string strip(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  std::string out = s.substr(b, e - b + 1);
  if (out.size() >= 2 && out.front() == '"' && out.back() == '"') out = out.substr(1, out.size() - 2);
  return out;
}

template <class F>
auto parse_number(const std::string& key, const std::string& value, F&& convert) {
  try {
    std::size_t used = 0;
    auto v = convert(value, &used);
    if (used != value.size()) throw ParseError("");
    return v;
  } catch (const std::exception&) {
    throw ParseError("config key '" + key + "': bad number '" + value + "'");
  }
}

}  // namespace detail

// One "key = value" per line; '#' starts a comment; [section] headers are ignored.
inline void apply_config_line(Config& c, const std::string& raw, std::size_t line_no, const std::string& source) {
  std::string line = raw.substr(0, raw.find('#'));
  line = detail::strip(line);
  if (line.empty() || line.front() == '[') return;
  const auto eq = line.find('=');
  const std::string where = source + ":" + std::to_string(line_no);
  if (eq == std::string::npos) throw ParseError(where + ": expected key = value");
  const std::string key = detail::strip(line.substr(0, eq));
  const std::string value = detail::strip(line.substr(eq + 1));
  auto to_u64 = [](const std::string& v, std::size_t* used) { return std::stoull(v, used); };
  auto to_dbl = [](const std::string& v, std::size_t* used) { return std::stod(v, used); };
  try {
    if (key == "arithmetic") {
      c.arithmetic = parse_arithmetic(value);
    } else if (key == "enum_cap_n") {
      c.enum_cap_n = detail::parse_number(key, value, to_u64);
      if (c.enum_cap_n == 0 || c.enum_cap_n > 40) throw ParseError("enum_cap_n must lie in [1, 40]");
    } else if (key == "mc_samples") {
      c.mc_samples = detail::parse_number(key, value, to_u64);
      if (c.mc_samples == 0) throw ParseError("mc_samples must be positive");
    } else if (key == "seed") {
      c.seed = detail::parse_number(key, value, to_u64);
    } else if (key == "tolerance" || key == "tie_tolerance") {
      const double t = detail::parse_number(key, value, to_dbl);
      if (!(t > 0.0 && t < 1.0)) throw ParseError(key + " must lie in (0, 1)");
      (key == "tolerance" ? c.tolerance : c.tie_tolerance) = t;
    } else if (key == "threads") {
      c.threads = static_cast<unsigned>(detail::parse_number(key, value, to_u64));
    } else if (key == "output" || key == "format") {
      c.format = parse_format(value);
    } else {
      throw ParseError("unknown key '" + key + "'");
    }
  } catch (const ParseError& e) {
    throw ParseError(where + ": " + e.what());
  }
}

inline Config load_config(const std::string& path, Config base = {}) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open config " + path);
  std::string line;
  std::size_t no = 0;
  while (std::getline(in, line)) apply_config_line(base, line, ++no, path);
  return base;
}

}  // namespace simplex_interp
