#pragma once

#include <array>
#include <cmath>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "simplex_interp/absorption.hpp"
#include "simplex_interp/body.hpp"
#include "simplex_interp/bound_table.hpp"
#include "simplex_interp/config.hpp"
#include "simplex_interp/ellipsoid.hpp"
#include "simplex_interp/extremal.hpp"
#include "simplex_interp/hadamard.hpp"
#include "simplex_interp/io.hpp"
#include "simplex_interp/legendre.hpp"
#include "simplex_interp/projector.hpp"
#include "simplex_interp/quad1d.hpp"

// JSON report builders behind the command-line subcommands.
namespace simplex_interp::reports {

struct Range {
  std::size_t lo = 1;
  std::size_t hi = 1;
};

// "4" or "1..4".
inline Range parse_range(const std::string& text) {
  auto num = [&](const std::string& s) -> std::size_t {
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
      throw ParseError("bad dimension range '" + text + "'");
    return static_cast<std::size_t>(std::stoull(s));
  };
  const auto dots = text.find("..");
  Range r;
  if (dots == std::string::npos) {
    r.lo = r.hi = num(text);
  } else {
    r.lo = num(text.substr(0, dots));
    r.hi = num(text.substr(dots + 2));
  }
  if (r.lo == 0 || r.lo > r.hi) throw ParseError("dimension range must satisfy 1 <= lo <= hi, got '" + text + "'");
  return r;
}

inline ScanOptions scan_options(const Config& c) {
  ScanOptions o;
  o.cap_n = c.enum_cap_n;
  o.threads = c.threads;
  o.tie_rel = c.tie_tolerance;
  return o;
}

template <Scalar T>
Json scalars_json(const std::vector<T>& xs) {
  Json a = Json::array();
  for (const auto& x : xs) a.push_back(format_scalar(x));
  return a;
}

// ---------------------------------------------------------------------------
// absorb / norm

struct BodySpec {
  std::string kind = "cube";  // cube | symcube | ball | polytope
  std::string center;          // comma list; ball only
  std::string radius = "1";
  std::string polytope_file;
};

template <Scalar T>
Body<T> make_body(const BodySpec& b, std::size_t n) {
  if (b.kind == "cube") return Body<T>::unit_cube(n);
  if (b.kind == "symcube") return Body<T>::symmetric_cube(n);
  if (b.kind == "ball") {
    Point<T> c = b.center.empty() ? Point<T>(n, T(0)) : parse_point_list<T>(b.center);
    if (c.size() != n) throw DimensionMismatch("ball center has the wrong dimension");
    const Rational r = parse_rational(b.radius);
    if constexpr (is_exact_v<T>)
      return Body<T>::ball(std::move(c), r);
    else
      return Body<T>::ball(std::move(c), to_double(r));
  }
  if (b.kind == "polytope") {
    if (b.polytope_file.empty()) throw ParseError("--body polytope needs --polytope FILE");
    auto k = Body<T>::polytope(vertices_from_json<T>(read_json_file(b.polytope_file)));
    if (k.n != n) throw DimensionMismatch("polytope and simplex dimensions differ");
    return k;
  }
  throw ParseError("unknown body '" + b.kind + "' (cube, symcube, ball, polytope)");
}

template <Scalar T>
Json absorption_json(const AbsorptionReport<T>& r) {
  return Json{{"xi", field_of(r.xi)},
              {"alpha", field_of(r.alpha)},
              {"circumscribed", r.circumscribed},
              {"per_facet_max", scalars_json(r.per_facet_max)},
              {"argmax_vertex", point_json(r.argmax_vertex)}};
}

template <Scalar T>
Json absorb(const Simplex<T>& s, const BodySpec& spec, bool oracle, const Config& c) {
  const Body<T> k = make_body<T>(spec, s.dim());
  Json out{{"body", to_string(k.kind)}, {"n", s.dim()}};
  if (k.kind == BodyKind::ball) {
    const auto r = xi_ball_report(s, to_double(k.center), to_double(k.radius), c.tolerance);
    out.update(absorption_json(r));
  } else {
    out.update(absorption_json(xi_polytope(k, s, scan_options(c), c.tolerance)));
  }
  if (oracle)
    out["oracle"] = Json{{"xi", field(xi_oracle(k, s), "float")}, {"alpha", field(alpha_oracle(k, s), "float")}};
  return out;
}

template <Scalar T>
Json norm(const Simplex<T>& s, const BodySpec& spec, bool histogram, bool chain, const Config& c) {
  const Body<T> k = make_body<T>(spec, s.dim());
  Json out{{"body", to_string(k.kind)}, {"n", s.dim()}};
  auto fill = [&](const auto& p) {
    out["norm"] = field_of(p.norm);
    out["argmax"] = point_json(p.argmax);
    out["sign_pattern"] = p.sign_pattern;
    if (histogram) out["mu_histogram"] = histogram_json(p.mu_histogram);
  };
  if (k.kind == BodyKind::ball) {
    BallNormOptions o;
    o.threads = c.threads;
    o.cap_n = std::max<std::size_t>(c.enum_cap_n, 26);
    fill(norm_on_ball(s, to_double(k.center), to_double(k.radius), o));
  } else {
    fill(norm_on_polytope(s, k, scan_options(c)));
  }
  if (chain) {
    const BoundChain b = bound_chain_check(s, k, c.tolerance);
    out["bound_chain"] = Json{{"xi", field(b.xi)},
                              {"lower_residual", field(b.lower_residual)},
                              {"upper_residual", field(b.upper_residual)},
                              {"mu", b.mu},
                              {"mu_residual", field(b.mu_residual)},
                              {"holds", b.holds}};
  }
  return out;
}

// ---------------------------------------------------------------------------
// theta

inline Json theta_ball_rows(Range r) {
  Json rows = Json::array();
  for (std::size_t n = r.lo; n <= r.hi; ++n) {
    const RegularBallNorm b = regular_ball_norm(n);
    rows.push_back(Json{{"n", n},
                        {"theta", field(b.p, "exact-paper")},
                        {"a", b.a},
                        {"k", b.k},
                        {"lower_bound", field(theta_ball_lower_bound(n), "chi-bound")}});
  }
  return Json{{"rows", std::move(rows)}};
}

inline Json bound_entry_json(const BoundEntry& e) {
  return Json{{"value", e.value}, {"decimal", e.decimal}, {"provenance", e.provenance}};
}

inline Json bound_row_json(const BoundRow& r) {
  Json j{{"n", r.n}};
  auto opt = [&](const char* key, const std::optional<BoundEntry>& e) {
    j[key] = e ? bound_entry_json(*e) : Json(nullptr);
  };
  opt("theta_cube_exact", r.theta_cube_exact);
  j["theta_cube_lower"] = bound_entry_json(r.theta_cube_lower);
  j["theta_cube_upper"] = bound_entry_json(r.theta_cube_upper);
  opt("theta_cube_published_upper", r.theta_cube_published);
  j["theta_ball_exact"] = bound_entry_json(r.theta_ball_exact);
  j["theta_ball_lower"] = bound_entry_json(r.theta_ball_lower);
  opt("xi_cube_exact", r.xi_cube_exact);
  j["xi_cube_lower"] = bound_entry_json(r.xi_cube_lower);
  j["xi_cube_upper"] = bound_entry_json(r.xi_cube_upper);
  return j;
}

inline BoundTableOptions bound_options(const Config& c, const std::vector<HadamardMatrix>& batch) {
  BoundTableOptions o;
  o.enum_cap_n = c.enum_cap_n;
  o.seed = c.seed;
  o.threads = c.threads;
  if (!batch.empty()) o.batches[batch.front().order()] = batch;
  return o;
}

inline Json bound_table(Range r, const Config& c, const std::vector<HadamardMatrix>& batch = {}) {
  Json rows = Json::array();
  for (const auto& row : emit_bound_table(r.lo, r.hi, bound_options(c, batch))) rows.push_back(bound_row_json(row));
  return Json{{"rows", std::move(rows)}};
}

inline std::string bound_table_csv(const Json& table) {
  std::ostringstream out;
  const char* keys[] = {"theta_cube_exact", "theta_cube_lower",  "theta_cube_upper", "theta_cube_published_upper",
                        "theta_ball_exact", "theta_ball_lower",  "xi_cube_exact",    "xi_cube_lower",
                        "xi_cube_upper"};
  out << "n";
  for (const char* k : keys) out << ',' << k << ',' << k << "_provenance";
  out << '\n';
  for (const auto& row : table["rows"]) {
    out << row["n"].get<std::size_t>();
    for (const char* k : keys) {
      const Json& e = row[k];
      if (e.is_null())
        out << ",,";
      else
        out << ',' << e["value"].get<std::string>() << ',' << e["provenance"].get<std::string>();
    }
    out << '\n';
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// hadamard

inline Json hadamard_rows_json(const HadamardMatrix& h) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < h.order(); ++i) {
    std::string line;
    for (std::size_t j = 0; j < h.order(); ++j) line += h(i, j) > 0 ? '+' : '-';
    rows.push_back(line);
  }
  return Json{{"order", h.order()}, {"rows", std::move(rows)}};
}

inline Json mu_rows_json(const std::vector<MuStatRow>& rows) {
  Json a = Json::array();
  for (const auto& r : rows)
    a.push_back(Json{{"index", r.index},
                     {"order", r.order},
                     {"norm", field(r.norm, "exact")},
                     {"mu_histogram", histogram_json(r.mu_histogram)}});
  return a;
}

inline std::string mu_rows_csv(const std::vector<MuStatRow>& rows) {
  std::ostringstream out;
  write_mu_csv(out, rows);
  return out.str();
}

// ---------------------------------------------------------------------------
// legendre / measure / constants

template <Scalar T>
Json legendre_eval(std::size_t n, const std::string& t_text) {
  const Rational t = parse_rational(t_text);
  T tv;
  if constexpr (is_exact_v<T>)
    tv = t;
  else
    tv = to_double(t);
  return Json{{"n", n}, {"t", t_text}, {"chi", field_of(chi(n, tv))}};
}

inline Json legendre_inv(std::size_t n, double s) {
  const double t = chi_inv(n, s);
  return Json{{"n", n}, {"s", field(s)}, {"t", field(t)}, {"chi_at_t", field(chi(n, t))}};
}

struct MonteCarloRequest {
  std::uint64_t samples = 0;
  std::uint64_t seed = 1;
};

inline Json measure(std::size_t n, const std::string& gamma_text, std::optional<MonteCarloRequest> mc,
                    const Config& c) {
  const Rational gamma = parse_rational(gamma_text);
  if (gamma < 1) throw DimensionMismatch("gamma must be >= 1");
  const Rational exact = chi_sum_form<Rational>(n, gamma);
  Json out{{"n", n}, {"gamma", gamma_text}, {"measure", field(exact, "exact")}};
  if (mc) {
    const auto e = measure_E_monte_carlo(n, to_double(gamma), mc->samples, mc->seed, c.threads);
    out["monte_carlo"] = Json{{"estimate", field(e.estimate, "monte-carlo")},
                              {"std_error", field(e.std_error, "monte-carlo")},
                              {"samples", e.samples},
                              {"hits", e.hits},
                              {"seed", mc->seed},
                              {"z_score", field((e.estimate - to_double(exact)) / e.std_error, "monte-carlo")}};
  }
  return out;
}

inline Json constants(std::size_t n) {
  const VolumeConstants v = nu_table(n);
  const std::string tag = v.nu_provenance == "bounded" ? "bounded" : "exact";
  Json out{{"n", n}};
  out["nu"] = v.nu_exact ? field(*v.nu_exact, tag) : Json(nullptr);
  out["nu_lower"] = field(v.nu_lower, tag);
  out["nu_upper"] = field(v.nu_upper, tag);
  out["nu_provenance"] = v.nu_provenance;
  out["h"] = v.h_exact ? field(Rational(*v.h_exact), tag) : Json(nullptr);
  out["kappa"] = field(v.kappa);
  out["sigma"] = field(v.sigma);
  const CubeLowerBound lb = theta_cube_lower_bound(n);
  out["theta_cube_lower"] = field(lb.value, "chi-bound");
  out["theta_cube_lower_nu"] = lb.provenance;
  out["theta_ball"] = field(theta_ball(n), "exact-paper");
  out["theta_ball_lower"] = field(theta_ball_lower_bound(n), "chi-bound");
  return out;
}

// ---------------------------------------------------------------------------
// ellipsoid

template <Scalar T>
Json ellipsoid(const Simplex<T>& s, std::optional<std::size_t> witness_m, bool ball_witness) {
  const Ellipsoid e = minimal_ellipsoid(s);
  const std::size_t n = s.dim();
  Json shape = Json::array();
  for (std::size_t a = 0; a < n; ++a) {
    Json row = Json::array();
    for (std::size_t b = 0; b < n; ++b) row.push_back(e.shape(a, b));
    shape.push_back(std::move(row));
  }
  Json out{{"n", n}, {"center", e.center}, {"shape", std::move(shape)}};
  if (witness_m) {
    const WitnessSet w = witness_points(s, *witness_m);
    const MeanSquare ms = mean_square_check(s, *witness_m);
    double lo = w.norms.front(), hi = w.norms.front();
    for (double v : w.norms) lo = std::min(lo, v), hi = std::max(hi, v);
    Json wj{{"m", w.m},
            {"r", field(w.r)},
            {"count", w.points.size()},
            {"min_norm", field(lo)},
            {"max_norm", field(hi)},
            {"mean_square", Json{{"lhs", field(ms.lhs)}, {"rhs", field(ms.rhs)}, {"residual", field(ms.residual)}}}};
    if (w.points.size() <= 1000) {
      Json pts = Json::array();
      for (std::size_t k = 0; k < w.points.size(); ++k)
        pts.push_back(Json{{"index_set", w.index_sets[k]}, {"point", w.points[k]}, {"norm", w.norms[k]}});
      wj["points"] = std::move(pts);
    }
    out["witness"] = std::move(wj);
  }
  if (ball_witness) {
    const EqualityWitness w = theta_ball_equality_witness(s);
    out["ball_witness"] = Json{{"norm_lower_bound", field(w.norm_lb)},
                               {"theta_ball", field(theta_ball(n), "exact-paper")},
                               {"index_set", w.index_set},
                               {"point", w.witness}};
  }
  return out;
}

// ---------------------------------------------------------------------------
// search / catalog

template <Scalar T>
Json search_json(const SearchResult<T>& r, const std::string& tag) {
  return Json{{"method", to_string(r.method)},
              {"best_value", field(r.best_value, tag)},
              {"evaluations", r.evaluations},
              {"simplex", simplex_json(r.best_simplex)}};
}

inline Json catalog_entry(const std::string& name, Arithmetic a) {
  Json out{{"name", name}};
  if (a == Arithmetic::rational && catalog_is_exact(name)) {
    const Simplex<Rational> s = catalog_exact(name);
    out["exact"] = true;
    out["volume"] = field(volume(s), "exact");
    out["simplex"] = simplex_json(s);
  } else {
    const Simplex<double> s = catalog(name);
    out["exact"] = false;
    out["volume"] = field(volume(s), "float");
    out["simplex"] = simplex_json(s);
  }
  return out;
}

// ---------------------------------------------------------------------------
// quad1d

template <Scalar T>
Json quad1d(const std::array<T, 3>& nodes) {
  const QuadProjector<T> q(nodes);
  const T nrm = q.norm();
  const T xi = q.xi_arc();
  const T residual = xi - (T(3) * nrm - T(1)) / T(2);
  Json ns = Json::array();
  for (const auto& x : q.nodes()) ns.push_back(format_scalar(x));
  return Json{{"nodes", std::move(ns)}, {"norm", field_of(nrm)}, {"xi", field_of(xi)}, {"chain_residual", field_of(residual)}};
}

inline Json quad1d_symmetric(const std::string& r_text, Arithmetic a) {
  Json out;
  const Rational r = parse_rational(r_text);
  if (r <= 0 || r > 1) throw DegenerateNodes("symmetric nodes need 0 < r <= 1");
  if (a == Arithmetic::rational)
    out = quad1d(std::array<Rational, 3>{-r, Rational(0), r});
  else
    out = quad1d(std::array<double, 3>{-to_double(r), 0.0, to_double(r)});
  const double rd = to_double(r);
  out["closed_form"] = Json{{"norm", field(quad_norm_symmetric_closed_form(rd))},
                            {"xi", field(xi_symmetric_closed_form(rd))}};
  return out;
}

// ---------------------------------------------------------------------------
// reproduce

// Count of cube vertices on the boundary of xi*S: min_j lambda_j(u) = (1 - xi)/(n+1).
inline std::size_t boundary_cube_vertices(const Simplex<Rational>& s, const Rational& xi) {
  const std::size_t n = s.dim();
  const Rational target = (Rational(1) - xi) / Rational(static_cast<long long>(n + 1));
  std::size_t count = 0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    Point<Rational> u(n);
    for (std::size_t i = 0; i < n; ++i) u[i] = (mask >> i) & 1U ? 1 : 0;
    const auto l = barycentric(s, u);
    if (*std::min_element(l.begin(), l.end()) == target) ++count;
  }
  return count;
}

inline Json reproduce_absorption(const Config& c) {
  const ScanOptions o = scan_options(c);
  Json out{{"target", "absorption"}};
  auto tetra = [&](const Simplex<Rational>& s) {
    const auto r = xi_polytope(Body<Rational>::unit_cube(3), s, o);
    return Json{{"volume", field(volume(s))},
                {"xi", field(r.xi)},
                {"boundary_cube_vertices", boundary_cube_vertices(s, r.xi)}};
  };
  out["Sprime3"] = tetra(s_prime());
  out["Sdoubleprime3"] = tetra(s_double_prime());
  Json star = Json::array();
  for (long long n = 3; n <= 10; ++n) {
    const auto s = s_star(static_cast<std::size_t>(n));
    const auto r = xi_polytope(Body<Rational>::unit_cube(static_cast<std::size_t>(n)), s, o);
    star.push_back(Json{{"n", n},
                        {"xi", field(r.xi)},
                        {"closed_form", field(ratio(n * n - 3, n - 1), "exact-paper")},
                        {"alpha", field(r.alpha)}});
  }
  out["Sstar"] = std::move(star);
  const Simplex<double> g = golden_triangle();
  const double tau = golden_tau();
  out["golden2"] = Json{{"tau", field(tau)},
                        {"tau_equation_residual", field(tau * tau - 3.0 * tau + 1.0)},
                        {"xi", field(xi_polytope(Body<double>::unit_cube(2), g, o).xi)},
                        {"xi_closed_form", field(detail::xi2_cube(), "exact-paper")},
                        {"norm", field(norm_on_polytope(g, Body<double>::unit_cube(2), o).norm)},
                        {"norm_closed_form", field(detail::theta2_cube(), "exact-paper")}};
  return out;
}

inline Json reproduce_cube_norms(Range r, const Config& c) {
  ScanOptions o = scan_options(c);
  Json out{{"target", "cube-norms"}};
  const Simplex<Rational> h = to_regular_simplex(h8());
  const auto p = norm_on_polytope(h, Body<Rational>::symmetric_cube(7), o);
  out["H8"] = Json{{"matrix", hadamard_rows_json(h8())},
                   {"norm", field(p.norm)},
                   {"mu_histogram", histogram_json(p.mu_histogram)},
                   {"theta_cube_lower_bound", field(theta_cube_lower_bound(7).value, "chi-bound")}};
  const auto s16 = mu_statistics_batch({sylvester(4)}, o);
  out["sylvester16"] = Json{{"norm", field(s16.front().norm)},
                            {"mu_histogram", histogram_json(s16.front().mu_histogram)},
                            {"matches_reference_row", matches_some_row(s16.front(), mu15_reference())}};
  out["bounds"] = bound_table(r, c)["rows"];
  return out;
}

inline Json reproduce_measure(Range r, const Config& c) {
  Json rows = Json::array();
  for (std::size_t n = r.lo; n <= r.hi; ++n) {
    Json row = measure(n, "2", MonteCarloRequest{std::min<std::uint64_t>(c.mc_samples, 200000), c.seed}, c);
    row["chi_at_2"] = field(chi<Rational>(n, Rational(2)), "exact");
    rows.push_back(std::move(row));
  }
  return Json{{"target", "legendre-measure"}, {"rows", std::move(rows)}};
}

inline Json reproduce_ball_witness(Range r) {
  Json rows = Json::array();
  for (std::size_t n = std::max<std::size_t>(r.lo, 2); n <= r.hi; ++n) {
    const EqualityWitness w = theta_ball_equality_witness(regular_ball_simplex(n));
    rows.push_back(Json{{"n", n},
                        {"k", regular_ball_norm(n).k},
                        {"norm_lower_bound", field(w.norm_lb)},
                        {"theta_ball", field(theta_ball(n), "exact-paper")}});
  }
  return Json{{"target", "ball-witness"}, {"rows", std::move(rows)}};
}

inline Json reproduce_quad1d() {
  Json out{{"target", "quad1d"}};
  out["regular_nodes"] = quad1d(std::array<Rational, 3>{-1, 0, 1});
  out["r_4_5"] = quad1d_symmetric("4/5", Arithmetic::rational);
  const double r0 = 2.0 * std::sqrt(2.0) / 3.0;
  out["breakpoint"] = quad1d(std::array<double, 3>{-r0, 0.0, r0});
  out["breakpoint"]["r"] = field(r0);
  return out;
}

inline Json reproduce_mu_table(const std::vector<MuStatRow>& rows) {
  Json out{{"rows", mu_rows_json(rows)}};
  if (!rows.empty() && rows.front().order == 16) {
    out["matches_reference_multiset"] = matches_as_multiset(rows, mu15_reference());
    Json each = Json::array();
    for (const auto& row : rows) each.push_back(matches_some_row(row, mu15_reference()));
    out["row_in_reference"] = std::move(each);
  }
  return out;
}

}  // namespace simplex_interp::reports
