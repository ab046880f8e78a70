#pragma once

// Random instances and brute-force reference computations shared by the tests.
// The references avoid the library's own code paths on purpose: plain loops,
// permutation expansions, explicit sampling.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <vector>

#include "simplex_interp/rng.hpp"
#include "simplex_interp/scalar.hpp"
#include "simplex_interp/simplex.hpp"

namespace testing_support {

using namespace simplex_interp;

// Leibniz expansion over all permutations.
template <class T>
T leibniz_det(const std::vector<std::vector<T>>& a) {
  const std::size_t n = a.size();
  std::vector<std::size_t> p(n);
  std::iota(p.begin(), p.end(), 0);
  T total(0);
  do {
    int sign = 1;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (p[i] > p[j]) sign = -sign;
    T term(sign);
    for (std::size_t i = 0; i < n; ++i) term *= a[i][p[i]];
    total += term;
  } while (std::next_permutation(p.begin(), p.end()));
  return total;
}

template <class T>
std::vector<std::vector<T>> vertex_rows(const std::vector<Point<T>>& v) {
  std::vector<std::vector<T>> a;
  for (const auto& p : v) {
    std::vector<T> row(p.begin(), p.end());
    row.push_back(T(1));
    a.push_back(std::move(row));
  }
  return a;
}

// Points with coordinates k/den, k in [0, den], nondegenerate.
inline Simplex<Rational> random_rational_simplex(CounterRng& rng, std::size_t n, long long den = 12) {
  while (true) {
    std::vector<Point<Rational>> v(n + 1, Point<Rational>(n));
    for (auto& p : v)
      for (auto& x : p) x = ratio(static_cast<long long>(rng.below(static_cast<std::uint64_t>(den) + 1)), den);
    if (leibniz_det(vertex_rows(v)) != 0) return Simplex<Rational>(std::move(v));
  }
}

// Uniform points of [lo, hi]^n with |det| bounded away from zero.
inline Simplex<double> random_box_simplex(CounterRng& rng, std::size_t n, double lo = 0.0, double hi = 1.0) {
  while (true) {
    std::vector<Point<double>> v(n + 1, Point<double>(n));
    for (auto& p : v)
      for (auto& x : p) x = rng.uniform(lo, hi);
    if (std::abs(leibniz_det(vertex_rows(v))) > 1e-3) return Simplex<double>(std::move(v));
  }
}

inline Point<double> random_unit_vector(CounterRng& rng, std::size_t n) {
  Point<double> u(n);
  double r = 0.0;
  do {
    r = 0.0;
    for (auto& x : u) {
      x = rng.normal();
      r += x * x;
    }
  } while (r < 1e-12);
  for (auto& x : u) x /= std::sqrt(r);
  return u;
}

// Points inside the unit ball (radius^(1/n) scaling).
inline Simplex<double> random_ball_simplex(CounterRng& rng, std::size_t n, bool on_sphere = false) {
  while (true) {
    std::vector<Point<double>> v;
    for (std::size_t j = 0; j <= n; ++j) {
      Point<double> u = random_unit_vector(rng, n);
      const double r = on_sphere ? 1.0 : std::pow(rng.uniform(), 1.0 / static_cast<double>(n));
      for (auto& x : u) x *= r;
      v.push_back(std::move(u));
    }
    if (std::abs(leibniz_det(vertex_rows(v))) > 1e-3) return Simplex<double>(std::move(v));
  }
}

// Barycentric coordinates by Cramer's rule on the (n+1)x(n+1) system.
template <class T>
std::vector<T> cramer_barycentric(const std::vector<Point<T>>& v, const Point<T>& x) {
  const std::size_t m = v.size();
  // Columns are (x^j, 1); solve sum_j lambda_j (x^j, 1) = (x, 1).
  std::vector<std::vector<T>> a(m, std::vector<T>(m));
  for (std::size_t j = 0; j < m; ++j) {
    for (std::size_t i = 0; i + 1 < m; ++i) a[i][j] = v[j][i];
    a[m - 1][j] = T(1);
  }
  const T d = leibniz_det(a);
  std::vector<T> out(m);
  for (std::size_t j = 0; j < m; ++j) {
    auto aj = a;
    for (std::size_t i = 0; i + 1 < m; ++i) aj[i][j] = x[i];
    aj[m - 1][j] = T(1);
    out[j] = leibniz_det(aj) / d;
  }
  return out;
}

template <class T>
std::vector<Point<T>> cube_vertices(std::size_t n, bool symmetric) {
  std::vector<Point<T>> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    Point<T> u(n);
    for (std::size_t i = 0; i < n; ++i) u[i] = (mask >> i) & 1U ? T(1) : T(symmetric ? -1 : 0);
    out.push_back(std::move(u));
  }
  return out;
}

// max over the given points of sum_j |lambda_j|, by Cramer's rule.
template <class T>
T brute_norm(const std::vector<Point<T>>& v, const std::vector<Point<T>>& points) {
  T best(0);
  for (const auto& u : points) {
    T s(0);
    for (const auto& l : cramer_barycentric(v, u)) s += l < T(0) ? T(-l) : l;
    best = std::max(best, s);
  }
  return best;
}

// xi over the given points: (n+1) max_j max_u (-lambda_j(u)) + 1, at least 1.
template <class T>
T brute_xi(const std::vector<Point<T>>& v, const std::vector<Point<T>>& points) {
  T worst(0);
  for (const auto& u : points)
    for (const auto& l : cramer_barycentric(v, u)) worst = std::max(worst, T(-l));
  const T xi = T(static_cast<long long>(v.size())) * worst + T(1);
  return std::max(xi, T(1));
}

// alpha over the given points: sum_j max_u (-lambda_j(u)) + 1.
template <class T>
T brute_alpha(const std::vector<Point<T>>& v, const std::vector<Point<T>>& points) {
  std::vector<T> worst;
  for (const auto& u : points) {
    const auto l = cramer_barycentric(v, u);
    if (worst.empty()) {
      for (const auto& x : l) worst.push_back(-x);
      continue;
    }
    for (std::size_t j = 0; j < v.size(); ++j) worst[j] = std::max(worst[j], T(-l[j]));
  }
  T s(1);
  for (const auto& w : worst) s += w;
  return s;
}

}  // namespace testing_support
