#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "simplex_interp/scalar.hpp"

namespace simplex_interp {

// Dense row-major matrix.
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, const T& fill = T(0))
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<T> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  std::span<const T> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }

  std::vector<T> column(std::size_t j) const {
    std::vector<T> out(rows_);
    for (std::size_t i = 0; i < rows_; ++i) out[i] = (*this)(i, j);
    return out;
  }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
  }

  Matrix transposed() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    Matrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        if (a(i, k) == T(0)) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += a(i, k) * b(k, j);
      }
    return c;
  }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

template <class T>
struct Inversion {
  T det{0};
  std::optional<Matrix<T>> inverse;  // absent when singular
};

// Gauss-Jordan with partial pivoting.
inline Inversion<double> invert(const Matrix<double>& a) {
  const std::size_t n = a.rows();
  Matrix<double> m = a;
  Matrix<double> inv = Matrix<double>::identity(n);
  double det = 1.0;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (std::abs(m(i, k)) > std::abs(m(p, k))) p = i;
    if (m(p, k) == 0.0) return {0.0, std::nullopt};
    if (p != k) {
      m.swap_rows(p, k);
      inv.swap_rows(p, k);
      det = -det;
    }
    const double pivot = m(k, k);
    det *= pivot;
    for (std::size_t j = 0; j < n; ++j) {
      m(k, j) /= pivot;
      inv(k, j) /= pivot;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k || m(i, k) == 0.0) continue;
      const double f = m(i, k);
      for (std::size_t j = 0; j < n; ++j) {
        m(i, j) -= f * m(k, j);
        inv(i, j) -= f * inv(k, j);
      }
    }
  }
  return {det, std::move(inv)};
}

// Fraction-free (Bareiss/Montante) Gauss-Jordan on the row-integerized matrix.
inline Inversion<Rational> invert(const Matrix<Rational>& a) {
  const std::size_t n = a.rows();
  std::vector<BigInt> row_scale(n, BigInt(1));
  Matrix<BigInt> m(n, 2 * n, BigInt(0));
  for (std::size_t i = 0; i < n; ++i) {
    BigInt l = 1;
    for (std::size_t j = 0; j < n; ++j) {
      const BigInt d = boost::multiprecision::denominator(a(i, j));
      l = l / boost::multiprecision::gcd(l, d) * d;
    }
    row_scale[i] = l;
    for (std::size_t j = 0; j < n; ++j)
      m(i, j) = boost::multiprecision::numerator(a(i, j)) * (l / boost::multiprecision::denominator(a(i, j)));
    m(i, n + i) = 1;
  }

  BigInt prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && m(p, k) == 0) ++p;
    if (p == n) return {Rational(0), std::nullopt};
    if (p != k) {
      m.swap_rows(p, k);
      sign = -sign;
    }
    const BigInt pivot = m(k, k);
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k) continue;
      const BigInt f = m(i, k);
      for (std::size_t j = 0; j < 2 * n; ++j) m(i, j) = (pivot * m(i, j) - f * m(k, j)) / prev;
    }
    prev = pivot;
  }
  // Left block is prev*I, right block is prev*B^{-1}.
  const BigInt d = prev;
  BigInt scale_product = 1;
  for (const auto& s : row_scale) scale_product *= s;

  Matrix<Rational> inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = make_rational(m(i, n + j) * row_scale[j], d);
  return {make_rational(BigInt(sign) * d, scale_product), std::move(inv)};
}

inline double determinant(const Matrix<double>& a) { return invert(a).det; }
inline Rational determinant(const Matrix<Rational>& a) { return invert(a).det; }

// Solves a*x = b by partial pivoting; nullopt when singular.
inline std::optional<std::vector<double>> solve(Matrix<double> a, std::vector<double> b) {
  const std::size_t n = a.rows();
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (std::abs(a(i, k)) > std::abs(a(p, k))) p = i;
    if (a(p, k) == 0.0) return std::nullopt;
    a.swap_rows(p, k);
    std::swap(b[p], b[k]);
    for (std::size_t i = k + 1; i < n; ++i) {
      const double f = a(i, k) / a(k, k);
      if (f == 0.0) continue;
      for (std::size_t j = k; j < n; ++j) a(i, j) -= f * a(k, j);
      b[i] -= f * b[k];
    }
  }
  std::vector<double> x(n);
  for (std::size_t i = n; i-- > 0;) {
    double s = b[i];
    for (std::size_t j = i + 1; j < n; ++j) s -= a(i, j) * x[j];
    x[i] = s / a(i, i);
  }
  return x;
}

// Lower-triangular factor of a symmetric positive-definite matrix.
inline std::optional<Matrix<double>> cholesky(const Matrix<double>& a) {
  const std::size_t n = a.rows();
  Matrix<double> l(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    double d = a(j, j);
    for (std::size_t k = 0; k < j; ++k) d -= l(j, k) * l(j, k);
    if (!(d > 0.0)) return std::nullopt;
    l(j, j) = std::sqrt(d);
    for (std::size_t i = j + 1; i < n; ++i) {
      double s = a(i, j);
      for (std::size_t k = 0; k < j; ++k) s -= l(i, k) * l(j, k);
      l(i, j) = s / l(j, j);
    }
  }
  return l;
}

template <class T>
Matrix<double> to_double(const Matrix<T>& m) {
  Matrix<double> out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = to_double(m(i, j));
  return out;
}

}  // namespace simplex_interp
