#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "simplex_interp/errors.hpp"
#include "simplex_interp/matrix.hpp"
#include "simplex_interp/projector.hpp"
#include "simplex_interp/simplex.hpp"

namespace simplex_interp {

// {x : (x - c)^T M (x - c) <= 1}.
struct Ellipsoid {
  Point<double> center;
  Matrix<double> shape;

  double form(std::span<const double> x) const {
    const std::size_t n = center.size();
    double s = 0.0;
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) s += (x[a] - center[a]) * shape(a, b) * (x[b] - center[b]);
    return s;
  }
};

// Minimum-volume ellipsoid containing S: the preimage of the circumscribed ball
// under the affine map taking S to a regular simplex. With X holding the
// centered vertices as columns, X X^T = ((n+1)/n) B B^T for that map's linear
// part B, so M = (B B^T)^{-1} = ((n+1)/n) (X X^T)^{-1}.
template <Scalar T>
Ellipsoid minimal_ellipsoid(const Simplex<T>& s) {
  const Simplex<double> sd = to_double(s);
  const std::size_t n = sd.dim();
  Ellipsoid e{centroid(sd), Matrix<double>(n, n)};
  Matrix<double> g(n, n);
  for (const auto& v : sd.vertices())
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) g(a, b) += (v[a] - e.center[a]) * (v[b] - e.center[b]);
  auto inv = invert(g);
  if (!inv.inverse) throw DegenerateSimplex("centered vertex Gram matrix is singular");
  const double scale = static_cast<double>(n + 1) / static_cast<double>(n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) e.shape(a, b) = scale * 0.5 * ((*inv.inverse)(a, b) + (*inv.inverse)(b, a));
  return e;
}

struct WitnessSet {
  std::size_t m = 0;
  double r = 0.0;  // (1/m) sqrt(m - m(m-1)/n)
  std::vector<std::vector<std::size_t>> index_sets;  // colexicographic
  std::vector<Point<double>> points;
  std::vector<double> norms;
};

// All m-subsets of {0..n} in colexicographic order.
inline std::vector<std::vector<std::size_t>> colex_subsets(std::size_t count, std::size_t m) {
  std::vector<std::vector<std::size_t>> out;
  if (m == 0 || m > count) return out;
  std::vector<std::size_t> c(m);
  for (std::size_t i = 0; i < m; ++i) c[i] = i;
  while (true) {
    out.push_back(c);
    std::size_t i = 0;
    while (i < m && c[i] + 1 == (i + 1 < m ? c[i + 1] : count)) ++i;
    if (i == m) break;
    ++c[i];
    for (std::size_t k = 0; k < i; ++k) c[k] = k;
  }
  return out;
}

// y_J = c + (1/r)(c - g_J) with g_J the centroid of the vertices in J. The
// formula is barycentric, hence commutes with the affine map to the regular
// frame, where every y_J lies on the unit sphere; so each y_J lies on the
// boundary of the minimal ellipsoid.
template <Scalar T>
WitnessSet witness_points(const Simplex<T>& s, std::size_t m) {
  const Simplex<double> sd = to_double(s);
  const std::size_t n = sd.dim();
  if (m < 1 || m > n) throw DimensionMismatch("witness face size must lie in [1, n]");
  WitnessSet w;
  w.m = m;
  const double md = static_cast<double>(m);
  w.r = std::sqrt(md - md * (md - 1.0) / static_cast<double>(n)) / md;
  const Point<double> c = centroid(sd);
  w.index_sets = colex_subsets(n + 1, m);
  for (const auto& set : w.index_sets) {
    Point<double> y(n);
    double norm2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double g = 0.0;
      for (std::size_t j : set) g += sd.vertex(j)[i];
      g /= md;
      y[i] = c[i] + (c[i] - g) / w.r;
      norm2 += y[i] * y[i];
    }
    w.points.push_back(std::move(y));
    w.norms.push_back(std::sqrt(norm2));
  }
  return w;
}

struct MeanSquare {
  double lhs;  // mean over J of |y_J|^2
  double rhs;  // mean over vertices of |x_j|^2
  double residual;
};

template <Scalar T>
MeanSquare mean_square_check(const Simplex<T>& s, std::size_t m) {
  const WitnessSet w = witness_points(s, m);
  double lhs = 0.0;
  for (double v : w.norms) lhs += v * v;
  lhs /= static_cast<double>(w.norms.size());
  double rhs = 0.0;
  for (const auto& v : s.vertices())
    for (const auto& x : v) rhs += to_double(x) * to_double(x);
  rhs /= static_cast<double>(s.dim() + 1);
  return {lhs, rhs, std::abs(lhs - rhs)};
}

struct EqualityWitness {
  double norm_lb;
  Point<double> witness;
  std::vector<std::size_t> index_set;
};

// Among the y_J with |J| = k_n that lie in B_n, the one maximizing
// sum_j |lambda_j(y)|; that value bounds ||P||_{B_n} from below.
template <Scalar T>
EqualityWitness theta_ball_equality_witness(const Simplex<T>& s, double tol = 1e-9) {
  const Simplex<double> sd = to_double(s);
  const std::size_t n = sd.dim();
  for (const auto& v : sd.vertices()) {
    double r2 = 0.0;
    for (double x : v) r2 += x * x;
    if (std::sqrt(r2) > 1.0 + tol) throw DimensionMismatch("simplex vertices must lie in the closed unit ball");
  }
  const std::size_t m = n == 0 ? 1 : std::min(n, regular_ball_norm(n).k);
  const WitnessSet w = witness_points(sd, m);
  EqualityWitness best{-1.0, {}, {}};
  for (std::size_t k = 0; k < w.points.size(); ++k) {
    if (w.norms[k] > 1.0 + tol) continue;
    double sum = 0.0;
    for (double l : barycentric(sd, w.points[k])) sum += std::abs(l);
    if (sum > best.norm_lb) best = {sum, w.points[k], w.index_sets[k]};
  }
  if (best.norm_lb < 0.0) throw NoWitnessInBall("no witness point y_J lies in the unit ball");
  return best;
}

}  // namespace simplex_interp
