#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "simplex_interp/absorption.hpp"
#include "simplex_interp/body.hpp"
#include "simplex_interp/errors.hpp"
#include "simplex_interp/legendre.hpp"
#include "simplex_interp/parallel.hpp"
#include "simplex_interp/simplex.hpp"
#include "simplex_interp/vertex_scan.hpp"

namespace simplex_interp {

// ||P||_K = max over K of sum_j |lambda_j|.
template <Scalar T>
struct ProjectorReport {
  T norm{1};
  Point<T> argmax;
  std::vector<int> sign_pattern;  // sign of lambda_j(argmax); zero counts as +1
  std::map<int, std::uint64_t> mu_histogram;  // norm-attaining vertices by count of negative lambda_j
  BodyKind body = BodyKind::unit_cube;
};

namespace detail {

template <Scalar T>
std::vector<int> signs_of(const std::vector<T>& lambdas) {
  std::vector<int> f;
  for (const auto& x : lambdas) f.push_back(x < T(0) ? -1 : 1);
  return f;
}

}  // namespace detail

template <Scalar T>
ProjectorReport<T> norm_on_polytope(const Simplex<T>& s, const Body<T>& k, ScanOptions opts = {}) {
  opts.want_norm = true;
  opts.want_histogram = true;
  opts.want_facets = false;
  auto scan = scan_vertices(s, k, opts);
  ProjectorReport<T> r;
  r.norm = scan.norm;
  r.argmax = scan.norm_argmax;
  r.sign_pattern = detail::signs_of(scan.argmax_lambda);
  r.mu_histogram = std::move(scan.mu_histogram);
  r.body = k.kind;
  return r;
}

template <Scalar T>
std::map<int, std::uint64_t> mu_points(const Simplex<T>& s, const Body<T>& k, const ScanOptions& opts = {}) {
  return norm_on_polytope(s, k, opts).mu_histogram;
}

struct BallNormOptions {
  std::size_t cap_n = 26;
  unsigned threads = 0;
};

// max over sign vectors f (last sign fixed to +1) of
// R |sum_j f_j grad lambda_j| + |sum_j f_j lambda_j(center)|.
template <Scalar T>
ProjectorReport<double> norm_on_ball(const Simplex<T>& s, std::span<const double> center, double radius,
                                     const BallNormOptions& opts = {}) {
  const std::size_t n = s.dim();
  if (center.size() != n) throw DimensionMismatch("ball center dimension mismatch");
  if (n > opts.cap_n)
    throw EnumerationTooLarge("ball norm enumerates 2^" + std::to_string(n) + " sign vectors; cap is n <= " +
                              std::to_string(opts.cap_n));
  const Simplex<double> sd = to_double(s);
  std::vector<std::vector<double>> grad(n + 1, std::vector<double>(n));
  std::vector<double> at_center(n + 1);
  for (std::size_t j = 0; j <= n; ++j) {
    for (std::size_t i = 0; i < n; ++i) grad[j][i] = sd.coeff(i, j);
    at_center[j] = sd.lambda(j, center);
  }
  // At the centroid every lambda_j is 1/(n+1); the constant term then counts signs.
  const Point<double> c = centroid(sd);
  bool at_centroid = true;
  for (std::size_t i = 0; i < n; ++i)
    at_centroid = at_centroid && std::abs(c[i] - center[i]) <= 1e-14 * std::max(1.0, std::abs(c[i]));
  if (at_centroid) std::fill(at_center.begin(), at_center.end(), 1.0 / static_cast<double>(n + 1));

  const std::uint64_t total = std::uint64_t{1} << n;
  const std::uint64_t chunk = std::uint64_t{1} << std::min<std::size_t>(n, 12);
  const std::size_t chunks = static_cast<std::size_t>(total / chunk);
  struct Best {
    double value = -1.0;
    std::uint64_t mask = 0;  // bit j set: f_j = -1, j < n; Gray position
  };
  std::vector<Best> partial(chunks);
  parallel_for(chunks, opts.threads, [&](std::size_t ci) {
    const std::uint64_t first = static_cast<std::uint64_t>(ci) * chunk;
    auto gray = [](std::uint64_t i) { return i ^ (i >> 1); };
    std::uint64_t mask = gray(first);
    std::vector<double> g(n, 0.0);
    double cst = 0.0;
    for (std::size_t j = 0; j <= n; ++j) {
      const double f = (j < n && ((mask >> j) & 1U)) ? -1.0 : 1.0;
      for (std::size_t i = 0; i < n; ++i) g[i] += f * grad[j][i];
      cst += f * at_center[j];
    }
    Best best;
    for (std::uint64_t idx = first; idx < first + chunk; ++idx) {
      if (idx != first) {
        const std::uint64_t next = gray(idx);
        const auto j = static_cast<std::size_t>(std::countr_zero(next ^ mask));
        const double delta = ((next >> j) & 1U) ? -2.0 : 2.0;
        for (std::size_t i = 0; i < n; ++i) g[i] += delta * grad[j][i];
        cst += delta * at_center[j];
        mask = next;
      }
      double norm2 = 0.0;
      for (double v : g) norm2 += v * v;
      const double value = radius * std::sqrt(norm2) + std::abs(cst);
      if (value > best.value || (value == best.value && mask < best.mask)) best = {value, mask};
    }
    partial[ci] = best;
  });
  Best best;
  for (const auto& p : partial)
    if (p.value > best.value || (p.value == best.value && p.mask < best.mask)) best = p;

  // Recover the maximizing point x0 +- R g/|g|.
  std::vector<double> g(n, 0.0);
  double cst = 0.0;
  for (std::size_t j = 0; j <= n; ++j) {
    const double f = (j < n && ((best.mask >> j) & 1U)) ? -1.0 : 1.0;
    for (std::size_t i = 0; i < n; ++i) g[i] += f * grad[j][i];
    cst += f * at_center[j];
  }
  double gn = 0.0;
  for (double v : g) gn += v * v;
  gn = std::sqrt(gn);
  ProjectorReport<double> r;
  r.norm = best.value;
  r.argmax.assign(center.begin(), center.end());
  if (gn > 0.0)
    for (std::size_t i = 0; i < n; ++i) r.argmax[i] += (cst < 0.0 ? -1.0 : 1.0) * radius * g[i] / gn;
  const auto lam = barycentric(sd, r.argmax);
  r.sign_pattern = detail::signs_of(lam);
  int mu = 0;
  for (double x : lam) mu += x < -1e-12;
  if (mu > 0) r.mu_histogram[mu] = 1;
  r.body = BodyKind::ball;
  return r;
}

// psi(k) = [2 sqrt(n k (n+1-k)) + |n+1-2k|] / (n+1), exact.
inline QuadraticSurd psi(std::size_t n, std::size_t k) {
  const long long m = static_cast<long long>(n + 1);
  const long long kk = static_cast<long long>(k);
  const long long lin = m - 2 * kk;
  return QuadraticSurd::make(ratio(lin < 0 ? -lin : lin, m), ratio(2, m),
                             static_cast<std::uint64_t>(n) * k * (n + 1 - k));
}

// a_n = floor((n+1)/2 - sqrt(n+1)/2): the largest a with sqrt(n+1) <= n+1-2a.
inline std::size_t regular_ball_a(std::size_t n) {
  const std::uint64_t m = n + 1;
  auto ok = [&](std::uint64_t a) { return 2 * a <= m && m <= (m - 2 * a) * (m - 2 * a); };
  std::uint64_t a = 0;
  while (ok(a + 1)) ++a;
  return static_cast<std::size_t>(a);
}

struct RegularBallNorm {
  std::size_t n = 0;
  std::size_t a = 0;
  std::size_t k = 0;  // whichever of a, a+1 gives the larger psi
  QuadraticSurd psi_a;
  QuadraticSurd psi_a1;
  QuadraticSurd p;  // max(psi_a, psi_a1): the norm of the regular inscribed simplex
};

inline RegularBallNorm regular_ball_norm(std::size_t n) {
  if (n == 0) throw DimensionMismatch("n must be >= 1");
  RegularBallNorm r;
  r.n = n;
  r.a = regular_ball_a(n);
  r.psi_a = psi(n, r.a);
  r.psi_a1 = psi(n, r.a + 1);
  const bool upper = r.psi_a1 == r.psi_a ? r.a == 0 : r.psi_a1.to_double() > r.psi_a.to_double();
  r.k = upper ? r.a + 1 : r.a;
  r.p = upper ? r.psi_a1 : r.psi_a;
  return r;
}

// theta_n(B_n), the minimal projector norm on the unit ball.
inline QuadraticSurd theta_ball(std::size_t n) { return regular_ball_norm(n).p; }

struct BoundChain {
  double xi = 1.0;
  double norm = 1.0;
  double lower_residual = 0.0;  // xi - [(n+1)/(2n)(norm-1) + 1]
  double upper_residual = 0.0;  // [(n+1)/2 (norm-1) + 1] - xi
  bool lower_tight = false;
  bool upper_tight = false;
  int mu = 0;                // smallest mu among norm-attaining points; 0 when none
  double mu_residual = 0.0;  // xi - [(n+1)/(2 mu)(norm-1) + 1]
  bool holds = false;
};

namespace detail {

inline BoundChain chain_from(std::size_t n, double xi, double norm, int mu, double tol) {
  const double m = static_cast<double>(n + 1);
  BoundChain c;
  c.xi = xi;
  c.norm = norm;
  c.lower_residual = xi - (m / (2.0 * static_cast<double>(n)) * (norm - 1.0) + 1.0);
  c.upper_residual = (m / 2.0 * (norm - 1.0) + 1.0) - xi;
  c.lower_tight = std::abs(c.lower_residual) <= tol;
  c.upper_tight = std::abs(c.upper_residual) <= tol;
  c.mu = mu;
  if (mu > 0) c.mu_residual = xi - (m / (2.0 * mu) * (norm - 1.0) + 1.0);
  c.holds = c.lower_residual >= -tol && c.upper_residual >= -tol && c.mu_residual >= -tol;
  return c;
}

}  // namespace detail

// (n+1)/(2n)(||P||-1) + 1 <= xi <= (n+1)/2 (||P||-1) + 1, plus the mu-vertex refinement.
template <Scalar T>
BoundChain bound_chain_check(const Simplex<T>& s, const Body<T>& k, double tol = 1e-9) {
  const std::size_t n = s.dim();
  if (k.kind == BodyKind::ball) {
    const Point<double> x0 = to_double(k.center);
    const double rho = to_double(k.radius);
    const double xi = xi_ball(s, x0, rho);
    const auto p = norm_on_ball(s, x0, rho);
    const int mu = p.mu_histogram.empty() ? 0 : p.mu_histogram.begin()->first;
    return detail::chain_from(n, xi, p.norm, mu, tol);
  }
  const double xi = to_double(xi_polytope(k, s).xi);
  const auto p = norm_on_polytope(s, k);
  const int mu = p.mu_histogram.empty() ? 0 : p.mu_histogram.begin()->first;
  return detail::chain_from(n, xi, to_double(p.norm), mu, tol);
}

struct CubeLowerBound {
  double value = 1.0;
  double classic = 1.0;   // 3 - 4/(n+1)
  double chi_term = 1.0;  // chi_n^{-1}(1/nu_n), or with nu_n replaced by an upper bound
  bool exact_nu = false;
  std::string provenance;  // exact-nu | bounded-nu
};

// theta_n(Q_n) >= max(3 - 4/(n+1), chi_n^{-1}(1/nu_n)).
inline CubeLowerBound theta_cube_lower_bound(std::size_t n) {
  if (n == 0) throw DimensionMismatch("n must be >= 1");
  CubeLowerBound b;
  b.classic = 3.0 - 4.0 / static_cast<double>(n + 1);
  const double s = std::exp(log_inverse_nu_lower(n, &b.exact_nu));
  b.chi_term = chi_inv(n, std::max(1.0, s));
  b.value = std::max(b.classic, b.chi_term);
  b.provenance = b.exact_nu ? "exact-nu" : "bounded-nu";
  return b;
}

// theta_n(B_n) >= chi_n^{-1}(kappa_n / sigma_n).
inline double theta_ball_lower_bound(std::size_t n) {
  const auto c = ball_constants(n);
  return chi_inv(n, std::max(1.0, c.kappa / c.sigma));
}

// ||P||_K >= chi_n^{-1}(vol K / vol S) for S inside K; a ratio below 1 only
// gives the trivial bound 1.
inline double norm_lower_bound_from_volume(std::size_t n, double volume_ratio) {
  return volume_ratio <= 1.0 ? 1.0 : chi_inv(n, volume_ratio);
}

template <Scalar T>
double norm_lower_bound_from_volume(const Simplex<T>& s, double body_volume) {
  return norm_lower_bound_from_volume(s.dim(), body_volume / to_double(volume(s)));
}

}  // namespace simplex_interp
