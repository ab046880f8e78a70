#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "simplex_interp/errors.hpp"
#include "simplex_interp/extremal.hpp"
#include "simplex_interp/hadamard.hpp"
#include "simplex_interp/projector.hpp"
#include "simplex_interp/scalar.hpp"

namespace simplex_interp {

// Provenance tags: exact-paper (closed form from the literature), hadamard-derived,
// chi-bound (the Legendre/volume lower bound), search-upper (catalog or search).
struct BoundEntry {
  std::string value;  // exact text when available, else %.17g
  double decimal = 0.0;
  std::string provenance;
};

struct BoundRow {
  std::size_t n = 0;
  std::optional<BoundEntry> theta_cube_exact;
  BoundEntry theta_cube_lower;
  BoundEntry theta_cube_upper;
  std::optional<BoundEntry> theta_cube_published;  // best published upper estimate
  BoundEntry theta_ball_exact;
  BoundEntry theta_ball_lower;
  std::optional<BoundEntry> xi_cube_exact;
  BoundEntry xi_cube_lower;
  BoundEntry xi_cube_upper;
};

struct BoundTableOptions {
  std::size_t enum_cap_n = 24;   // largest n whose cube vertices are enumerated
  std::size_t search_cap_n = 6;  // largest n given a continuous min-norm search
  std::uint64_t search_budget = 1500;
  std::uint64_t seed = 1;
  unsigned threads = 0;
  // Hadamard matrices by order; their best simplex norm feeds the upper bound.
  std::map<std::size_t, std::vector<HadamardMatrix>> batches;
};

namespace detail {

inline BoundEntry entry(const Rational& x, const std::string& tag) { return {format_rational(x), to_double(x), tag}; }
inline BoundEntry entry(const QuadraticSurd& x, const std::string& tag) { return {x.str(), x.to_double(), tag}; }
inline BoundEntry entry(double x, const std::string& tag) { return {format_decimal(x), x, tag}; }

inline QuadraticSurd theta2_cube() { return QuadraticSurd::make(Rational(1), ratio(2, 5), 5); }
inline QuadraticSurd xi2_cube() { return QuadraticSurd::make(Rational(1), ratio(3, 5), 5); }

// Published upper estimates of theta_n(Q_n), n = 4..27, where not exact.
inline std::optional<BoundEntry> published_theta_upper(std::size_t n) {
  const std::string tag = "exact-paper";
  switch (n) {
    case 4: return entry(QuadraticSurd::make(ratio(12, 7), ratio(3, 7), 2), tag);
    case 5: return entry(2.448804, tag);
    case 6: return entry(2.6000, tag);
    case 8: return entry(ratio(22, 7), tag);
    case 9: return entry(Rational(3), tag);
    case 10: return entry(ratio(19, 5), tag);
    case 11: return entry(Rational(3), tag);
    case 12: return entry(ratio(17, 5), tag);
    case 13: return entry(ratio(49, 13), tag);
    case 14: return entry(ratio(21, 5), tag);
    case 15: return entry(ratio(7, 2), tag);
    case 16: return entry(ratio(21, 5), tag);
    case 17: return entry(ratio(139, 34), tag);
    case 18: return entry(5.1400, tag);
    case 19: return entry(Rational(4), tag);
    case 20: return entry(4.68879, tag);
    case 21: return entry(ratio(251, 50), tag);
    case 22: return entry(ratio(1817, 335), tag);
    case 23: return entry(ratio(9, 2), tag);
    case 24: return entry(ratio(103, 21), tag);
    case 25: return entry(Rational(5), tag);
    case 26: return entry(ratio(474, 91), tag);
    case 27: return entry(Rational(5), tag);
    default: return std::nullopt;
  }
}

inline Rational cube_norm_exact(const Simplex<Rational>& s, const BoundTableOptions& o) {
  ScanOptions scan;
  scan.want_facets = false;
  scan.threads = o.threads;
  scan.cap_n = o.enum_cap_n;
  return scan_vertices(s, Body<Rational>::unit_cube(s.dim()), scan).norm;
}

inline void take_min(std::optional<BoundEntry>& best, BoundEntry candidate) {
  if (!best || candidate.decimal < best->decimal) best = std::move(candidate);
}

}  // namespace detail

inline BoundRow bound_row(std::size_t n, const BoundTableOptions& o = {}) {
  if (n == 0) throw DimensionMismatch("n must be >= 1");
  BoundRow r;
  r.n = n;
  const long long nn = static_cast<long long>(n);

  // theta_n(Q_n).
  if (n == 1) r.theta_cube_exact = detail::entry(Rational(1), "exact-paper");
  if (n == 2) r.theta_cube_exact = detail::entry(detail::theta2_cube(), "exact-paper");
  if (n == 3) r.theta_cube_exact = detail::entry(Rational(2), "exact-paper");
  if (n == 7) r.theta_cube_exact = detail::entry(ratio(5, 2), "exact-paper");
  r.theta_cube_published = detail::published_theta_upper(n);

  const CubeLowerBound low = theta_cube_lower_bound(n);
  r.theta_cube_lower = detail::entry(low.value, "chi-bound");
  if (low.value == low.classic) r.theta_cube_lower = detail::entry(ratio(3 * nn - 1, nn + 1), "chi-bound");

  std::optional<BoundEntry> up = r.theta_cube_exact;
  if (!up && constructible(n + 1)) {
    if (n <= o.enum_cap_n)
      detail::take_min(up, detail::entry(detail::cube_norm_exact(hadamard_unit(n + 1), o), "hadamard-derived"));
    else  // regular simplex inscribed in the cube's circumscribed ball
      detail::take_min(up, detail::entry(theta_ball(n), "hadamard-derived"));
  }
  if (auto it = o.batches.find(n + 1); !r.theta_cube_exact && it != o.batches.end() && !it->second.empty()) {
    ScanOptions scan;
    scan.threads = o.threads;
    scan.cap_n = o.enum_cap_n;
    for (const auto& row : mu_statistics_batch(it->second, scan))
      detail::take_min(up, detail::entry(row.norm, "hadamard-derived"));
  }
  if (!r.theta_cube_exact && n <= o.search_cap_n && n <= 10) {
    MinNormOptions m;
    m.budget = o.search_budget;
    m.seed = o.seed;
    m.threads = o.threads;
    detail::take_min(up, detail::entry(minimize_norm_cube(n, m).best_value, "search-upper"));
  }
  if (!r.theta_cube_exact && n <= std::min<std::size_t>(o.enum_cap_n, 20))
    detail::take_min(up, detail::entry(detail::cube_norm_exact(s_star(n), o), "search-upper"));
  if (!up)
    throw EnumerationTooLarge("no upper bound for theta_" + std::to_string(n) +
                              "(Q): n exceeds the enumeration cap and n+1 has no built-in Hadamard matrix");
  r.theta_cube_upper = *up;
  if (r.theta_cube_exact) r.theta_cube_lower = *r.theta_cube_exact;

  // theta_n(B_n) is known for every n.
  r.theta_ball_exact = detail::entry(theta_ball(n), "exact-paper");
  r.theta_ball_lower = detail::entry(theta_ball_lower_bound(n), "chi-bound");

  // xi_n(Q_n): n <= xi_n < n+1; equality xi_n = n is known for n = 1, 3, 5, 9
  // and whenever n+1 is a Hadamard order.
  r.xi_cube_lower = detail::entry(Rational(nn), "exact-paper");
  if (n == 2) {
    r.xi_cube_exact = detail::entry(detail::xi2_cube(), "exact-paper");
  } else if (n == 1 || n == 3 || n == 5 || n == 9) {
    r.xi_cube_exact = detail::entry(Rational(nn), "exact-paper");
  } else if (constructible(n + 1)) {
    r.xi_cube_exact = detail::entry(Rational(nn), "hadamard-derived");
  }
  if (r.xi_cube_exact) {
    r.xi_cube_lower = r.xi_cube_upper = *r.xi_cube_exact;
  } else if (n == 4) {
    r.xi_cube_upper = detail::entry(QuadraticSurd::make(ratio(19, 9), ratio(5, 9), 13), "exact-paper");
  } else if (n == 6) {
    r.xi_cube_upper = detail::entry(6.0166, "exact-paper");
  } else {
    r.xi_cube_upper = detail::entry(ratio(nn * nn - 3, nn - 1), "exact-paper");
  }

  const double slack = 1e-9;
  if (r.theta_cube_lower.decimal > r.theta_cube_upper.decimal + slack)
    throw InternalInconsistency("theta_" + std::to_string(n) + "(Q) lower bound exceeds upper bound");
  if (r.theta_ball_lower.decimal > r.theta_ball_exact.decimal + slack)
    throw InternalInconsistency("theta_" + std::to_string(n) + "(B) lower bound exceeds its exact value");
  if (r.xi_cube_lower.decimal > r.xi_cube_upper.decimal + slack)
    throw InternalInconsistency("xi_" + std::to_string(n) + " lower bound exceeds upper bound");
  return r;
}

inline std::vector<BoundRow> emit_bound_table(std::size_t n_lo, std::size_t n_hi, const BoundTableOptions& o = {}) {
  if (n_lo == 0 || n_lo > n_hi) throw DimensionMismatch("bound table needs 1 <= n_lo <= n_hi");
  std::vector<BoundRow> rows;
  for (std::size_t n = n_lo; n <= n_hi; ++n) rows.push_back(bound_row(n, o));
  return rows;
}

// Norms on [-1,1]^15 and mu-vertex counts for the five classes of order-16
// Hadamard matrices.
struct MuReference {
  Rational norm;
  std::map<int, std::uint64_t> mu_histogram;
};

inline const std::vector<MuReference>& mu15_reference() {
  static const std::vector<MuReference> rows = {
      {Rational(4), {{6, 448}}},
      {Rational(4), {{6, 192}}},
      {Rational(4), {{6, 64}}},
      {ratio(7, 2), {{4, 896}, {5, 1344}, {6, 5376}, {8, 1344}}},
      {ratio(7, 2), {{4, 896}, {5, 1344}, {6, 5376}, {8, 1344}}},
  };
  return rows;
}

// Whether the computed (norm, histogram) pairs equal the reference as multisets.
inline bool matches_as_multiset(const std::vector<MuStatRow>& rows, const std::vector<MuReference>& ref) {
  if (rows.size() != ref.size()) return false;
  std::vector<bool> used(ref.size(), false);
  for (const auto& r : rows) {
    bool found = false;
    for (std::size_t k = 0; k < ref.size() && !found; ++k)
      if (!used[k] && ref[k].norm == r.norm && ref[k].mu_histogram == r.mu_histogram) used[k] = found = true;
    if (!found) return false;
  }
  return true;
}

// Whether one computed row equals some reference row.
inline bool matches_some_row(const MuStatRow& row, const std::vector<MuReference>& ref) {
  for (const auto& r : ref)
    if (r.norm == row.norm && r.mu_histogram == row.mu_histogram) return true;
  return false;
}

}  // namespace simplex_interp
