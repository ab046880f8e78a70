#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "simplex_interp/body.hpp"
#include "simplex_interp/errors.hpp"
#include "simplex_interp/lp.hpp"
#include "simplex_interp/simplex.hpp"
#include "simplex_interp/vertex_scan.hpp"

namespace simplex_interp {

// xi(K;S): least sigma >= 1 with K inside sigma*S (homothety about the centroid).
// alpha(K;S): least sigma > 0 such that a translate of sigma*S contains K.
template <Scalar T>
struct AbsorptionReport {
  T xi{1};
  T alpha{1};
  bool circumscribed = false;
  std::vector<T> per_facet_max;  // max over K of -lambda_j
  Point<T> argmax_vertex;
};

namespace detail {

template <Scalar T>
AbsorptionReport<T> absorption_from_facets(std::vector<T> per_facet, Point<T> argmax, double tol) {
  AbsorptionReport<T> r;
  const std::size_t m = per_facet.size();
  std::size_t best = 0;
  T sum(0);
  for (std::size_t j = 0; j < m; ++j) {
    sum += per_facet[j];
    if (per_facet[j] > per_facet[best]) best = j;
  }
  r.xi = T(static_cast<long long>(m)) * per_facet[best] + T(1);
  if (r.xi < T(1)) r.xi = T(1);
  r.alpha = sum + T(1);
  bool all_equal = true;
  for (const auto& v : per_facet) {
    if constexpr (is_exact_v<T>)
      all_equal = all_equal && v == per_facet[best];
    else
      all_equal = all_equal && std::abs(v - per_facet[best]) <= tol * std::max(1.0, std::abs(per_facet[best]));
  }
  r.circumscribed = all_equal;
  r.per_facet_max = std::move(per_facet);
  r.argmax_vertex = std::move(argmax);
  return r;
}

}  // namespace detail

template <Scalar T>
AbsorptionReport<T> xi_polytope(const Body<T>& k, const Simplex<T>& s, ScanOptions opts = {}, double tol = 1e-9) {
  opts.want_norm = false;
  opts.want_facets = true;
  opts.want_histogram = false;
  auto scan = scan_vertices(s, k, opts);
  std::size_t best = 0;
  for (std::size_t j = 1; j < scan.max_neg_lambda.size(); ++j)
    if (scan.max_neg_lambda[j] > scan.max_neg_lambda[best]) best = j;
  return detail::absorption_from_facets(std::move(scan.max_neg_lambda), scan.facet_argmax[best], tol);
}

// Ball B(center; rho): max over the ball of -lambda_j is rho*|grad lambda_j| - lambda_j(center).
template <Scalar T>
AbsorptionReport<double> xi_ball_report(const Simplex<T>& s, std::span<const double> center, double rho,
                                        double tol = 1e-9) {
  const std::size_t n = s.dim();
  if (center.size() != n) throw DimensionMismatch("ball center dimension mismatch");
  const Simplex<double> sd = to_double(s);
  std::vector<double> per_facet(n + 1);
  std::size_t best = 0;
  for (std::size_t j = 0; j <= n; ++j) {
    per_facet[j] = rho * sd.gradient_norm(j) - sd.lambda(j, center);
    if (per_facet[j] > per_facet[best]) best = j;
  }
  Point<double> arg(center.begin(), center.end());
  const double g = sd.gradient_norm(best);
  for (std::size_t i = 0; i < n; ++i) arg[i] -= rho * sd.coeff(i, best) / g;
  return detail::absorption_from_facets(std::move(per_facet), std::move(arg), tol);
}

template <Scalar T>
double xi_ball(const Simplex<T>& s, std::span<const double> center, double rho) {
  return xi_ball_report(s, center, rho).xi;
}

// alpha(Q_n;S) = sum_i 1/d_i; the symmetric cube doubles it.
template <Scalar T>
T alpha_cube(const Simplex<T>& s, bool symmetric) {
  T sum(0);
  for (std::size_t i = 0; i < s.dim(); ++i)
    for (std::size_t j = 0; j <= s.dim(); ++j) sum += abs_value(s.coeff(i, j));
  return symmetric ? sum : sum / T(2);
}

struct BallAlphaTerms {
  double gradient_sum;   // sum_j |grad lambda_j|
  double inverse_heights;  // sum_j 1/h_j
  double inverse_inradius;  // 1/r, r measured from the incenter to each facet
  double surface_ratio;  // sigma/(n vol S)
};

template <Scalar T>
BallAlphaTerms alpha_ball_terms(const Simplex<T>& s) {
  const Simplex<double> sd = to_double(s);
  const std::size_t n = sd.dim();
  const double vol = volume(sd);
  BallAlphaTerms t{0.0, 0.0, 0.0, 0.0};
  double surface = 0.0;
  const Inball in = inradius_incenter(sd);
  double r_min = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j <= n; ++j) {
    t.gradient_sum += sd.gradient_norm(j);
    const double facet = facet_measure(sd, j);
    surface += facet;
    t.inverse_heights += facet / (static_cast<double>(n) * vol);
    // Distance from the incenter to facet j via the cone volume over that facet.
    std::vector<Point<double>> cone = sd.vertices();
    cone[j] = in.center;
    Matrix<double> a(n + 1, n + 1);
    for (std::size_t k = 0; k <= n; ++k) {
      for (std::size_t i = 0; i < n; ++i) a(k, i) = cone[k][i];
      a(k, n) = 1.0;
    }
    const double cone_volume = std::abs(determinant(a)) / factorial(n);
    r_min = std::min(r_min, static_cast<double>(n) * cone_volume / facet);
  }
  t.inverse_inradius = 1.0 / r_min;
  t.surface_ratio = surface / (static_cast<double>(n) * vol);
  return t;
}

// alpha(B_n;S); the four classical expressions must agree.
template <Scalar T>
double alpha_ball(const Simplex<T>& s, double tol = 1e-9) {
  const BallAlphaTerms t = alpha_ball_terms(s);
  for (double v : {t.inverse_heights, t.inverse_inradius, t.surface_ratio})
    if (std::abs(v - t.gradient_sum) > tol * std::max(1.0, t.gradient_sum))
      throw InternalInconsistency("alpha(B;S) expressions disagree: " + format_decimal(t.gradient_sum) + " vs " +
                                  format_decimal(v));
  return t.gradient_sum;
}

template <Scalar T>
T alpha_polytope(const Body<T>& k, const Simplex<T>& s, const ScanOptions& opts = {}) {
  return xi_polytope(k, s, opts).alpha;
}

namespace detail {

// K inside sigma*S, rebuilt from scratch.
template <Scalar T>
bool homothet_contains(const Body<T>& k, const Simplex<double>& s, double sigma, double slack) {
  const std::size_t n = s.dim();
  Point<double> c = centroid(s);
  std::vector<Point<double>> scaled = s.vertices();
  for (auto& v : scaled)
    for (std::size_t i = 0; i < n; ++i) v[i] = c[i] + sigma * (v[i] - c[i]);
  const Simplex<double> big(std::move(scaled));
  auto inside = [&](std::span<const double> x) {
    for (std::size_t j = 0; j <= n; ++j)
      if (big.lambda(j, x) < -slack) return false;
    return true;
  };
  switch (k.kind) {
    case BodyKind::unit_cube:
    case BodyKind::symmetric_cube: {
      const double lo = k.kind == BodyKind::unit_cube ? 0.0 : -1.0;
      Point<double> u(n);
      for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
        for (std::size_t i = 0; i < n; ++i) u[i] = (mask >> i) & 1U ? 1.0 : lo;
        if (!inside(u)) return false;
      }
      return true;
    }
    case BodyKind::ball: {
      const Point<double> x0 = to_double(k.center);
      const double rho = to_double(k.radius);
      for (std::size_t j = 0; j <= n; ++j)
        if (big.lambda(j, std::span<const double>(x0)) - rho * big.gradient_norm(j) < -slack) return false;
      return true;
    }
    case BodyKind::polytope:
      for (const auto& v : k.vertices)
        if (!inside(to_double(v))) return false;
      return true;
  }
  return false;
}

template <class Feasible>
double bisect_threshold(double hi, double lo_floor, double tol, Feasible&& feasible) {
  int guard = 0;
  while (!feasible(hi)) {
    hi *= 2.0;
    if (++guard > 60) throw NoConvergence("bisection bracket did not close");
  }
  double lo = hi / 2.0;
  while (lo > lo_floor && feasible(lo)) {
    hi = lo;
    lo /= 2.0;
    if (++guard > 200) throw NoConvergence("bisection lower bracket did not close");
  }
  lo = std::max(lo, lo_floor);
  for (int it = 0; it < 400 && hi - lo > tol * std::max(1.0, hi); ++it) {
    const double mid = 0.5 * (lo + hi);
    (feasible(mid) ? hi : lo) = mid;
  }
  if (hi - lo > tol * std::max(1.0, hi)) throw NoConvergence("bisection did not reach tolerance");
  return hi;
}

}  // namespace detail

// Bisection on sigma with an independent containment test.
template <Scalar T>
double xi_oracle(const Body<T>& k, const Simplex<T>& s, double tol = 1e-10) {
  const std::size_t n = s.dim();
  if (k.n != n) throw DimensionMismatch("body and simplex dimensions differ");
  if (k.is_cube() && n > 12) throw EnumerationTooLarge("xi oracle supports cubes up to n = 12");
  const Simplex<double> sd = to_double(s);
  constexpr double slack = 1e-12;
  if (detail::homothet_contains(k, sd, 1.0, slack)) return 1.0;
  double formula;
  if (k.kind == BodyKind::ball)
    formula = xi_ball(sd, to_double(k.center), to_double(k.radius));
  else
    formula = to_double(xi_polytope(k, s).xi);
  return detail::bisect_threshold(std::max(2.0, 2.0 * formula), 1.0, tol,
                                  [&](double sigma) { return detail::homothet_contains(k, sd, sigma, slack); });
}

struct TranslateOracleOptions {
  bool prune_dominated = true;  // keep only the binding K-point per facet
  double tol = 1e-10;
};

// LP feasibility of t with lambda_j(u) - sum_i l_ij t_i >= (1 - sigma)/(n+1).
template <Scalar T>
double alpha_oracle(const Body<T>& k, const Simplex<T>& s, const TranslateOracleOptions& opts = {}) {
  const std::size_t n = s.dim();
  if (k.n != n) throw DimensionMismatch("body and simplex dimensions differ");
  const Simplex<double> sd = to_double(s);

  // Rows: (gradient of lambda_j, lambda_j(u)) for each test point u of K.
  std::vector<std::pair<std::size_t, double>> rows;
  if (k.kind == BodyKind::ball) {
    const Point<double> x0 = to_double(k.center);
    const double rho = to_double(k.radius);
    for (std::size_t j = 0; j <= n; ++j)
      rows.emplace_back(j, sd.lambda(j, std::span<const double>(x0)) - rho * sd.gradient_norm(j));
  } else {
    if (k.is_cube() && n > 6) throw EnumerationTooLarge("translate oracle supports cubes up to n = 6");
    std::vector<Point<double>> pts;
    if (k.kind == BodyKind::polytope) {
      for (const auto& v : k.vertices) pts.push_back(to_double(v));
    } else {
      const double lo = k.kind == BodyKind::unit_cube ? 0.0 : -1.0;
      for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
        Point<double> u(n);
        for (std::size_t i = 0; i < n; ++i) u[i] = (mask >> i) & 1U ? 1.0 : lo;
        pts.push_back(std::move(u));
      }
    }
    for (std::size_t j = 0; j <= n; ++j) {
      double least = std::numeric_limits<double>::infinity();
      for (const auto& u : pts) {
        const double v = sd.lambda(j, std::span<const double>(u));
        if (opts.prune_dominated)
          least = std::min(least, v);
        else
          rows.emplace_back(j, v);
      }
      if (opts.prune_dominated) rows.emplace_back(j, least);
    }
  }

  // Rows are scaled to unit length so the solver tolerance means the same thing on
  // nearly degenerate simplices, whose gradients are large.
  Matrix<double> a(rows.size(), n);
  std::vector<double> scale(rows.size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    double len = 0.0;
    for (std::size_t i = 0; i < n; ++i) len += sd.coeff(i, rows[r].first) * sd.coeff(i, rows[r].first);
    scale[r] = 1.0 / std::sqrt(len);
    for (std::size_t i = 0; i < n; ++i) a(r, i) = sd.coeff(i, rows[r].first) * scale[r];
  }
  const double m = static_cast<double>(n + 1);
  auto feasible = [&](double sigma) {
    std::vector<double> b(rows.size());
    for (std::size_t r = 0; r < rows.size(); ++r) b[r] = (rows[r].second - (1.0 - sigma) / m) * scale[r] + 1e-13;
    return find_feasible_free<double>(a, b, 1e-12).has_value();
  };

  double formula;
  if (k.kind == BodyKind::ball)
    formula = xi_ball_report(sd, to_double(k.center), to_double(k.radius)).alpha;
  else
    formula = to_double(xi_polytope(k, s).alpha);
  return detail::bisect_threshold(std::max(1e-6, 2.0 * formula), 1e-12, opts.tol, feasible);
}

template <Scalar T>
double alpha_oracle_cube(const Simplex<T>& s, double tol = 1e-10) {
  return alpha_oracle(Body<T>::unit_cube(s.dim()), s, {true, tol});
}

template <Scalar T>
struct InscribedCube {
  T sigma{0};
  std::optional<Point<T>> witness_translate;  // t with t + sigma*[0,1]^n inside S
};

// sigma = (sum 1/d_i)^{-1}; for n <= 6 an LP certifies the fitting translate.
template <Scalar T>
InscribedCube<T> inscribed_cube_ratio(const Simplex<T>& s) {
  const std::size_t n = s.dim();
  InscribedCube<T> out;
  out.sigma = T(1) / alpha_cube(s, false);
  if (n > 6) return out;
  // lambda_j(t + sigma u) >= 0 for all u; the binding u puts u_i = 1 where l_ij < 0.
  Matrix<T> a(n + 1, n);
  std::vector<T> b(n + 1);
  for (std::size_t j = 0; j <= n; ++j) {
    T least = s.coeff(n, j);
    for (std::size_t i = 0; i < n; ++i) {
      a(j, i) = -s.coeff(i, j);
      if (s.coeff(i, j) < T(0)) least += out.sigma * s.coeff(i, j);
    }
    b[j] = least;
    if constexpr (!is_exact_v<T>) b[j] += 1e-12;
  }
  T eps{0};
  if constexpr (!is_exact_v<T>) eps = 1e-12;
  out.witness_translate = find_feasible_free<T>(a, b, eps);
  return out;
}

}  // namespace simplex_interp
