#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "simplex_interp/matrix.hpp"
#include "simplex_interp/scalar.hpp"

namespace simplex_interp {

enum class LpStatus { optimal, infeasible, unbounded };

template <Scalar T>
struct LpResult {
  LpStatus status = LpStatus::infeasible;
  T objective{0};
  std::vector<T> x;
};

namespace detail {

// Dense tableau, Bland's rule. Row `m` of the tableau is the reduced-cost row
// (c_j - z_j) for maximization; the last column is the right-hand side.
template <Scalar T>
class Tableau {
 public:
  Tableau(std::size_t m, std::size_t cols, T eps) : m_(m), cols_(cols), t_(m + 1, cols + 1), basis_(m), eps_(eps) {}

  T& at(std::size_t i, std::size_t j) { return t_(i, j); }
  T& rhs(std::size_t i) { return t_(i, cols_); }
  std::size_t& basis(std::size_t i) { return basis_[i]; }

  void set_objective(std::span<const T> c) {
    for (std::size_t j = 0; j <= cols_; ++j) t_(m_, j) = T(0);
    for (std::size_t j = 0; j < c.size(); ++j) t_(m_, j) = c[j];
    for (std::size_t i = 0; i < m_; ++i) {
      const T cb = basis_[i] < c.size() ? c[basis_[i]] : T(0);
      if (cb == T(0)) continue;
      for (std::size_t j = 0; j <= cols_; ++j) t_(m_, j) -= cb * t_(i, j);
    }
  }

  void pivot(std::size_t r, std::size_t c) {
    const T p = t_(r, c);
    for (std::size_t j = 0; j <= cols_; ++j) t_(r, j) /= p;
    for (std::size_t i = 0; i <= m_; ++i) {
      if (i == r) continue;
      const T f = t_(i, c);
      if (f == T(0)) continue;
      for (std::size_t j = 0; j <= cols_; ++j) t_(i, j) -= f * t_(r, j);
    }
    basis_[r] = c;
  }

  // Maximizes over columns [0, allowed); false when unbounded.
  bool optimize(std::size_t allowed) {
    for (std::size_t iter = 0; iter < 100000; ++iter) {
      std::size_t enter = allowed;
      for (std::size_t j = 0; j < allowed; ++j)
        if (t_(m_, j) > eps_) {
          enter = j;
          break;
        }
      if (enter == allowed) return true;
      std::size_t leave = m_;
      T best{0};
      for (std::size_t i = 0; i < m_; ++i) {
        if (!(t_(i, enter) > eps_)) continue;
        const T ratio = t_(i, cols_) / t_(i, enter);
        if (leave == m_ || ratio < best || (ratio == best && basis_[i] < basis_[leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (leave == m_) return false;
      pivot(leave, enter);
    }
    return false;
  }

  T objective_value() const { return -t_(m_, cols_); }
  std::size_t rows() const { return m_; }

 private:
  std::size_t m_, cols_;
  Matrix<T> t_;
  std::vector<std::size_t> basis_;
  T eps_;
};

}  // namespace detail

// maximize c.x  subject to  a x <= b,  x >= 0  (two-phase simplex).
template <Scalar T>
LpResult<T> solve_lp(const Matrix<T>& a, std::span<const T> b, std::span<const T> c, T eps = T(0)) {
  const std::size_t m = a.rows(), nv = a.cols();
  std::vector<std::size_t> negative;
  for (std::size_t i = 0; i < m; ++i)
    if (b[i] < T(0)) negative.push_back(i);
  const std::size_t na = negative.size();
  const std::size_t cols = nv + m + na;
  detail::Tableau<T> tab(m, cols, eps);
  std::size_t art = 0;
  for (std::size_t i = 0; i < m; ++i) {
    const bool flip = b[i] < T(0);
    const T sgn = flip ? T(-1) : T(1);
    for (std::size_t j = 0; j < nv; ++j) tab.at(i, j) = sgn * a(i, j);
    tab.at(i, nv + i) = sgn;
    tab.rhs(i) = sgn * b[i];
    if (flip) {
      tab.at(i, nv + m + art) = T(1);
      tab.basis(i) = nv + m + art;
      ++art;
    } else {
      tab.basis(i) = nv + i;
    }
  }

  LpResult<T> result;
  if (na > 0) {
    std::vector<T> phase1(cols, T(0));
    for (std::size_t k = 0; k < na; ++k) phase1[nv + m + k] = T(-1);
    tab.set_objective(phase1);
    tab.optimize(cols);
    if (tab.objective_value() < -eps) return result;
    // Drive remaining zero-level artificials out of the basis.
    for (std::size_t i = 0; i < m; ++i) {
      if (tab.basis(i) < nv + m) continue;
      for (std::size_t j = 0; j < nv + m; ++j) {
        if (abs_value(tab.at(i, j)) > eps) {
          tab.pivot(i, j);
          break;
        }
      }
    }
  }

  std::vector<T> obj(cols, T(0));
  for (std::size_t j = 0; j < nv; ++j) obj[j] = c[j];
  tab.set_objective(obj);
  if (!tab.optimize(nv + m)) {
    result.status = LpStatus::unbounded;
    return result;
  }
  result.status = LpStatus::optimal;
  result.objective = tab.objective_value();
  result.x.assign(nv, T(0));
  for (std::size_t i = 0; i < m; ++i)
    if (tab.basis(i) < nv) result.x[tab.basis(i)] = tab.rhs(i);
  return result;
}

// Some x (free sign) with a x <= b, or nothing.
template <Scalar T>
std::optional<std::vector<T>> find_feasible_free(const Matrix<T>& a, std::span<const T> b, T eps = T(0)) {
  const std::size_t m = a.rows(), nv = a.cols();
  Matrix<T> split(m, 2 * nv);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < nv; ++j) {
      split(i, j) = a(i, j);
      split(i, nv + j) = -a(i, j);
    }
  std::vector<T> zero(2 * nv, T(0));
  auto r = solve_lp<T>(split, b, zero, eps);
  if (r.status != LpStatus::optimal) return std::nullopt;
  std::vector<T> x(nv);
  for (std::size_t j = 0; j < nv; ++j) x[j] = r.x[j] - r.x[nv + j];
  return x;
}

}  // namespace simplex_interp
