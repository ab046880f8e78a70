#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "simplex_interp/errors.hpp"
#include "simplex_interp/matrix.hpp"
#include "simplex_interp/scalar.hpp"

namespace simplex_interp {

struct SimplexOptions {
  double degeneracy = 1e-10;  // relative to max-row-norm^(n+1), float mode only
};

// Nondegenerate simplex with its vertex matrix A (rows (x^j, 1)), the inverse
// L = A^{-1} and det A. Column j of L holds the coefficients of the j-th basic
// Lagrange polynomial; row n of L holds the constant terms.
template <Scalar T>
class Simplex {
 public:
  explicit Simplex(std::vector<Point<T>> vertices, const SimplexOptions& opts = {})
      : vertices_(std::move(vertices)) {
    const std::size_t m = vertices_.size();
    if (m < 2) throw DimensionMismatch("a simplex needs at least 2 vertices");
    const std::size_t n = m - 1;
    for (const auto& v : vertices_)
      if (v.size() != n)
        throw DimensionMismatch("expected " + std::to_string(m) + " points of dimension " + std::to_string(n));

    a_ = Matrix<T>(m, m);
    double max_row = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
      double norm2 = 1.0;
      for (std::size_t i = 0; i < n; ++i) {
        a_(j, i) = vertices_[j][i];
        const double v = to_double(vertices_[j][i]);
        if (!std::isfinite(v)) throw DimensionMismatch("non-finite vertex coordinate");
        norm2 += v * v;
      }
      a_(j, n) = T(1);
      max_row = std::max(max_row, std::sqrt(norm2));
    }

    auto inv = invert(a_);
    det_ = inv.det;
    if constexpr (is_exact_v<T>) {
      if (!inv.inverse) throw DegenerateSimplex("vertex matrix is singular");
    } else {
      if (!inv.inverse || std::abs(det_) < opts.degeneracy * std::pow(max_row, static_cast<double>(m)))
        throw DegenerateSimplex("vertex matrix determinant below degeneracy threshold");
    }
    l_ = std::move(*inv.inverse);
  }

  std::size_t dim() const { return vertices_.size() - 1; }
  const std::vector<Point<T>>& vertices() const { return vertices_; }
  const Point<T>& vertex(std::size_t j) const { return vertices_[j]; }
  const Matrix<T>& vertex_matrix() const { return a_; }
  const Matrix<T>& lagrange() const { return l_; }
  const T& det() const { return det_; }

  // l_ij for i < n; i == n gives the constant term of lambda_j.
  const T& coeff(std::size_t i, std::size_t j) const { return l_(i, j); }

  template <class U>
  T lambda(std::size_t j, std::span<const U> x) const {
    T s = l_(dim(), j);
    for (std::size_t i = 0; i < dim(); ++i) s += l_(i, j) * T(x[i]);
    return s;
  }

  // Euclidean norm of the gradient of lambda_j.
  double gradient_norm(std::size_t j) const {
    double s = 0.0;
    for (std::size_t i = 0; i < dim(); ++i) {
      const double v = to_double(l_(i, j));
      s += v * v;
    }
    return std::sqrt(s);
  }

 private:
  std::vector<Point<T>> vertices_;
  Matrix<T> a_;
  Matrix<T> l_;
  T det_{0};
};

template <Scalar T>
Simplex<T> build_simplex(std::vector<Point<T>> vertices, const SimplexOptions& opts = {}) {
  return Simplex<T>(std::move(vertices), opts);
}

template <Scalar T>
Simplex<double> to_double(const Simplex<T>& s) {
  if constexpr (std::same_as<T, double>) {
    return s;
  } else {
    std::vector<Point<double>> v;
    for (const auto& p : s.vertices()) v.push_back(to_double(p));
    return Simplex<double>(std::move(v));
  }
}

template <Scalar T>
std::vector<T> barycentric(const Simplex<T>& s, std::span<const T> x) {
  if (x.size() != s.dim())
    throw DimensionMismatch("point has dimension " + std::to_string(x.size()) + ", simplex " +
                            std::to_string(s.dim()));
  std::vector<T> out(s.dim() + 1);
  for (std::size_t j = 0; j <= s.dim(); ++j) out[j] = s.lambda(j, x);
  return out;
}

template <Scalar T>
std::vector<T> barycentric(const Simplex<T>& s, const Point<T>& x) {
  return barycentric(s, std::span<const T>(x));
}

inline double factorial(std::size_t n) {
  double f = 1.0;
  for (std::size_t k = 2; k <= n; ++k) f *= static_cast<double>(k);
  return f;
}

inline BigInt big_factorial(std::size_t n) {
  BigInt f = 1;
  for (std::size_t k = 2; k <= n; ++k) f *= k;
  return f;
}

template <Scalar T>
T volume(const Simplex<T>& s) {
  if constexpr (is_exact_v<T>)
    return abs_value(s.det()) / Rational(big_factorial(s.dim()));
  else
    return std::abs(s.det()) / factorial(s.dim());
}

template <Scalar T>
Point<T> centroid(const Simplex<T>& s) {
  Point<T> c(s.dim(), T(0));
  for (const auto& v : s.vertices())
    for (std::size_t i = 0; i < s.dim(); ++i) c[i] += v[i];
  for (auto& x : c) x /= T(static_cast<long long>(s.dim() + 1));
  return c;
}

// d_i = 2 / sum_j |l_ij|.
template <Scalar T>
std::vector<T> axial_diameters(const Simplex<T>& s) {
  std::vector<T> d(s.dim());
  for (std::size_t i = 0; i < s.dim(); ++i) {
    T sum(0);
    for (std::size_t j = 0; j <= s.dim(); ++j) sum += abs_value(s.coeff(i, j));
    d[i] = T(2) / sum;
  }
  return d;
}

struct Inball {
  double radius;
  Point<double> center;
};

template <Scalar T>
Inball inradius_incenter(const Simplex<T>& s) {
  const std::size_t n = s.dim();
  std::vector<double> w(n + 1);
  double total = 0.0;
  for (std::size_t j = 0; j <= n; ++j) total += (w[j] = s.gradient_norm(j));
  Inball out{1.0 / total, Point<double>(n, 0.0)};
  for (std::size_t j = 0; j <= n; ++j)
    for (std::size_t i = 0; i < n; ++i) out.center[i] += w[j] / total * to_double(s.vertex(j)[i]);
  return out;
}

struct EnclosingBall {
  double radius;
  Point<double> center;
  bool circumcenter_inside;  // the ball is the circumsphere ball
};

namespace detail {

inline double distance(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(s);
}

struct Sphere {
  Point<double> center;
  double radius = -1.0;  // negative: empty
};

// Smallest sphere through the support points, centered in their affine hull.
inline Sphere sphere_through(const std::vector<const Point<double>*>& support, std::size_t dim) {
  if (support.empty()) return {Point<double>(dim, 0.0), -1.0};
  const Point<double>& p0 = *support[0];
  const std::size_t k = support.size() - 1;
  if (k == 0) return {p0, 0.0};
  Matrix<double> g(k, k);
  std::vector<double> rhs(k);
  std::vector<Point<double>> e(k, Point<double>(dim));
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t i = 0; i < dim; ++i) e[a][i] = (*support[a + 1])[i] - p0[i];
  for (std::size_t a = 0; a < k; ++a) {
    for (std::size_t b = 0; b < k; ++b) {
      double dot = 0.0;
      for (std::size_t i = 0; i < dim; ++i) dot += e[a][i] * e[b][i];
      g(a, b) = dot;
    }
    rhs[a] = 0.5 * g(a, a);
  }
  auto coef = solve(g, rhs);
  if (!coef) return {p0, std::numeric_limits<double>::infinity()};
  Point<double> c = p0;
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t i = 0; i < dim; ++i) c[i] += (*coef)[a] * e[a][i];
  const double r = distance(c, p0);
  return {std::move(c), r};
}

inline Sphere welzl(const std::vector<Point<double>>& pts, std::size_t count,
                    std::vector<const Point<double>*>& support, std::size_t dim) {
  if (count == 0 || support.size() == dim + 1) return sphere_through(support, dim);
  const Point<double>& p = pts[count - 1];
  Sphere s = welzl(pts, count - 1, support, dim);
  const double slack = 1e-12 * std::max(1.0, s.radius);
  if (s.radius >= 0.0 && distance(p, s.center) <= s.radius + slack) return s;
  support.push_back(&p);
  s = welzl(pts, count - 1, support, dim);
  support.pop_back();
  return s;
}

}  // namespace detail

// Minimum-radius ball containing S.
template <Scalar T>
EnclosingBall circumscribed_ball(const Simplex<T>& s) {
  const std::size_t n = s.dim();
  std::vector<Point<double>> pts;
  for (const auto& v : s.vertices()) pts.push_back(to_double(v));

  std::vector<const Point<double>*> all;
  for (const auto& p : pts) all.push_back(&p);
  detail::Sphere circ = detail::sphere_through(all, n);
  const Simplex<double> sd = to_double(s);
  bool inside = true;
  for (std::size_t j = 0; j <= n; ++j)
    if (sd.lambda(j, std::span<const double>(circ.center)) < -1e-12) inside = false;
  if (inside) return {circ.radius, std::move(circ.center), true};

  std::vector<const Point<double>*> support;
  detail::Sphere ball = detail::welzl(pts, pts.size(), support, n);
  return {ball.radius, std::move(ball.center), false};
}

// (n-1)-dimensional measure of the facet opposite vertex j.
template <Scalar T>
double facet_measure(const Simplex<T>& s, std::size_t j) {
  const std::size_t n = s.dim();
  std::vector<Point<double>> pts;
  for (std::size_t k = 0; k <= n; ++k)
    if (k != j) pts.push_back(to_double(s.vertex(k)));
  const std::size_t k = n - 1;
  if (k == 0) return 1.0;
  Matrix<double> g(k, k);
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = 0; b < k; ++b) {
      double dot = 0.0;
      for (std::size_t i = 0; i < n; ++i) dot += (pts[a + 1][i] - pts[0][i]) * (pts[b + 1][i] - pts[0][i]);
      g(a, b) = dot;
    }
  return std::sqrt(std::max(0.0, determinant(g))) / factorial(k);
}

// Regular simplex inscribed in B(center; radius): e_1..e_n and
// ((1 - sqrt(n+1))/n)(1,...,1), recentred and rescaled.
inline Simplex<double> regular_ball_simplex(std::size_t n, const Point<double>& center, double radius) {
  if (center.size() != n) throw DimensionMismatch("ball center dimension mismatch");
  const double nd = static_cast<double>(n);
  const double root = std::sqrt(nd + 1.0);
  const double shift = (1.0 - 1.0 / root) / nd;  // centroid coordinate
  const double r0 = std::sqrt(nd / (nd + 1.0));
  std::vector<Point<double>> v(n + 1, Point<double>(n));
  for (std::size_t j = 0; j <= n; ++j)
    for (std::size_t i = 0; i < n; ++i) {
      const double raw = j < n ? (i == j ? 1.0 : 0.0) : (1.0 - root) / nd;
      v[j][i] = center[i] + radius * (raw - shift) / r0;
    }
  return Simplex<double>(std::move(v));
}

inline Simplex<double> regular_ball_simplex(std::size_t n) {
  return regular_ball_simplex(n, Point<double>(n, 0.0), 1.0);
}

}  // namespace simplex_interp
