#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

#include "simplex_interp/errors.hpp"
#include "simplex_interp/simplex.hpp"

namespace simplex_interp {

// Quadratic interpolation on [-1,1] through the lift x -> (x, x^2): the basic
// Lagrange polynomials of the nodes are the barycentric coordinates of the
// lifted triangle restricted to the parabola.
template <Scalar T>
class QuadProjector {
 public:
  explicit QuadProjector(std::array<T, 3> nodes) : nodes_(sorted(nodes)), lifted_(lift(nodes_)) {
    // lambda_j(x, x^2) = a_j x^2 + b_j x + c_j.
    for (std::size_t j = 0; j < 3; ++j) {
      b_[j] = lifted_.coeff(0, j);
      a_[j] = lifted_.coeff(1, j);
      c_[j] = lifted_.coeff(2, j);
    }
  }

  const std::array<T, 3>& nodes() const { return nodes_; }
  const Simplex<T>& lifted_triangle() const { return lifted_; }

  T basis(std::size_t j, const T& x) const { return (a_[j] * x + b_[j]) * x + c_[j]; }

  T lebesgue(const T& x) const {
    T s(0);
    for (std::size_t j = 0; j < 3; ++j) s += abs_value(basis(j, x));
    return s;
  }

  // max over [-1,1] of sum_j |lambda_j|: the nodes split [-1,1] into pieces with
  // fixed signs; on each the sum is a quadratic, maximal at an end or the vertex.
  T norm() const {
    std::vector<T> cuts = {T(-1)};
    for (const auto& x : nodes_)
      if (x > T(-1) && x < T(1)) cuts.push_back(x);
    cuts.push_back(T(1));
    T best = lebesgue(T(-1));
    for (std::size_t p = 0; p + 1 < cuts.size(); ++p) {
      const T& lo = cuts[p];
      const T& hi = cuts[p + 1];
      best = std::max(best, lebesgue(hi));
      const T mid = (lo + hi) / T(2);
      T qa(0), qb(0);
      for (std::size_t j = 0; j < 3; ++j) {
        const T sign = basis(j, mid) < T(0) ? T(-1) : T(1);
        qa += sign * a_[j];
        qb += sign * b_[j];
      }
      if (qa != T(0)) {
        const T v = -qb / (T(2) * qa);
        if (v > lo && v < hi) best = std::max(best, lebesgue(v));
      }
    }
    return best;
  }

  // xi(T([-1,1]); S) = 3 max_j max_x (-lambda_j) + 1, clamped at 1.
  T xi_arc() const {
    T worst(0);
    for (std::size_t j = 0; j < 3; ++j) {
      worst = std::max({worst, T(-basis(j, T(-1))), T(-basis(j, T(1)))});
      if (a_[j] != T(0)) {
        const T v = -b_[j] / (T(2) * a_[j]);
        if (v > T(-1) && v < T(1)) worst = std::max(worst, T(-basis(j, v)));
      }
    }
    const T xi = T(3) * worst + T(1);
    return xi < T(1) ? T(1) : xi;
  }

 private:
  static std::array<T, 3> sorted(std::array<T, 3> n) {
    std::sort(n.begin(), n.end());
    for (const auto& x : n)
      if (x < T(-1) || x > T(1)) throw DegenerateNodes("nodes must lie in [-1, 1]");
    if (n[0] == n[1] || n[1] == n[2]) throw DegenerateNodes("nodes must be distinct");
    return n;
  }

  static Simplex<T> lift(const std::array<T, 3>& n) {
    std::vector<Point<T>> v;
    for (const auto& x : n) v.push_back({x, x * x});
    return Simplex<T>(std::move(v));
  }

  std::array<T, 3> nodes_;
  Simplex<T> lifted_;
  std::array<T, 3> a_{}, b_{}, c_{};
};

template <Scalar T>
T quad_norm(const std::array<T, 3>& nodes) {
  return QuadProjector<T>(nodes).norm();
}

template <Scalar T>
T xi_parabola(const std::array<T, 3>& nodes) {
  return QuadProjector<T>(nodes).xi_arc();
}

struct QuadChain {
  double norm;
  double xi;
  double residual;        // xi - (3 norm - 1)/2; zero for every node choice
  double lower_residual;  // xi - [(3/4)(norm - 1) + 1]
};

template <Scalar T>
QuadChain bound_chain_check_1d(const std::array<T, 3>& nodes) {
  const QuadProjector<T> q(nodes);
  const double norm = to_double(q.norm());
  const double xi = to_double(q.xi_arc());
  return {norm, xi, xi - (3.0 * norm - 1.0) / 2.0, xi - (0.75 * (norm - 1.0) + 1.0)};
}

// Symmetric nodes {-r, 0, r}: norm max(5/4, 2/r^2 - 1), xi max(11/8, 3/r^2 - 2).
inline double quad_norm_symmetric_closed_form(double r) { return std::max(1.25, 2.0 / (r * r) - 1.0); }
inline double xi_symmetric_closed_form(double r) { return std::max(11.0 / 8.0, 3.0 / (r * r) - 2.0); }

}  // namespace simplex_interp
