#include <gtest/gtest.h>

#include "simplex_interp/matrix.hpp"
#include "simplex_interp/scalar.hpp"
#include "test_support.hpp"

using namespace simplex_interp;
using testing_support::leibniz_det;

namespace {

Matrix<Rational> random_integer_matrix(CounterRng& rng, std::size_t n) {
  Matrix<Rational> m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = static_cast<long long>(rng.below(11)) - 5;
  return m;
}

std::vector<std::vector<Rational>> rows_of(const Matrix<Rational>& m) {
  std::vector<std::vector<Rational>> r(m.rows(), std::vector<Rational>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r[i][j] = m(i, j);
  return r;
}

}  // namespace

TEST(Rational, NegativeDenominatorIsNormalized) {
  EXPECT_EQ(make_rational(BigInt(3), BigInt(-6)), ratio(-1, 2));
  EXPECT_EQ(ratio(4, -8), ratio(-1, 2));
  EXPECT_EQ(format_rational(ratio(-6, -4)), "3/2");
}

TEST(Rational, ParseFormsAreExact) {
  EXPECT_EQ(parse_rational("3/6"), ratio(1, 2));
  EXPECT_EQ(parse_rational("-3/6"), ratio(-1, 2));
  EXPECT_EQ(parse_rational("0.125"), ratio(1, 8));
  EXPECT_EQ(parse_rational("1e-3"), ratio(1, 1000));
  EXPECT_EQ(parse_rational("-2.5E2"), Rational(-250));
  EXPECT_EQ(parse_rational(" 7 "), Rational(7));
  EXPECT_THROW(parse_rational("1/0"), ParseError);
  EXPECT_THROW(parse_rational("abc"), ParseError);
  EXPECT_THROW(parse_rational(""), ParseError);
}

TEST(Rational, FormatRoundTrip) {
  CounterRng rng(3, 0);
  for (int k = 0; k < 200; ++k) {
    const Rational x = ratio(static_cast<long long>(rng.below(2001)) - 1000, static_cast<long long>(rng.below(97)) + 1);
    EXPECT_EQ(parse_rational(format_rational(x)), x);
  }
  EXPECT_EQ(format_decimal(0.1), "0.10000000000000001");
}

TEST(QuadraticSurd, SquareFactorsAreExtracted) {
  const auto s = QuadraticSurd::make(Rational(1), ratio(1, 2), 20);  // 1 + sqrt(5)
  EXPECT_EQ(s.radicand(), 5u);
  EXPECT_EQ(s.surd_coefficient(), Rational(1));
  EXPECT_EQ(s.str(), "1 + sqrt(5)");
  const auto r = QuadraticSurd::make(ratio(1, 3), ratio(2, 3), 9);  // 1/3 + 2 = 7/3
  EXPECT_TRUE(r.is_rational());
  EXPECT_EQ(r.str(), "7/3");
  EXPECT_NEAR(QuadraticSurd::make(Rational(0), Rational(1), 2).to_double(), std::sqrt(2.0), 1e-15);
}

TEST(Matrix, RationalDeterminantMatchesLeibniz) {
  CounterRng rng(11, 0);
  for (std::size_t n = 1; n <= 6; ++n)
    for (int k = 0; k < 20; ++k) {
      const auto m = random_integer_matrix(rng, n);
      EXPECT_EQ(determinant(m), leibniz_det(rows_of(m))) << "n=" << n;
    }
}

TEST(Matrix, RationalInverseIsExact) {
  CounterRng rng(12, 0);
  for (std::size_t n = 1; n <= 6; ++n)
    for (int k = 0; k < 20; ++k) {
      const auto m = random_integer_matrix(rng, n);
      const auto inv = invert(m);
      if (leibniz_det(rows_of(m)) == 0) {
        EXPECT_FALSE(inv.inverse.has_value());
        continue;
      }
      ASSERT_TRUE(inv.inverse.has_value());
      const auto p = m * *inv.inverse;
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) EXPECT_EQ(p(i, j), Rational(i == j ? 1 : 0));
    }
}

TEST(Matrix, DoubleInverseAgreesWithRational) {
  CounterRng rng(13, 0);
  for (int k = 0; k < 50; ++k) {
    const auto m = random_integer_matrix(rng, 5);
    const auto exact = invert(m);
    const auto approx = invert(to_double(m));
    if (!exact.inverse) continue;
    ASSERT_TRUE(approx.inverse.has_value());
    EXPECT_NEAR(approx.det, to_double(exact.det), 1e-9 * std::max(1.0, std::abs(approx.det)));
    for (std::size_t i = 0; i < 5; ++i)
      for (std::size_t j = 0; j < 5; ++j)
        EXPECT_NEAR((*approx.inverse)(i, j), to_double((*exact.inverse)(i, j)), 1e-9);
  }
}

TEST(Matrix, SolveAndCholesky) {
  Matrix<double> a(3, 3);
  const double vals[3][3] = {{4, 2, 0.6}, {2, 5, 1}, {0.6, 1, 3}};
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) a(i, j) = vals[i][j];
  const auto x = solve(a, {1.0, 2.0, 3.0});
  ASSERT_TRUE(x.has_value());
  for (std::size_t i = 0; i < 3; ++i) {
    double r = 0.0;
    for (std::size_t j = 0; j < 3; ++j) r += a(i, j) * (*x)[j];
    EXPECT_NEAR(r, static_cast<double>(i + 1), 1e-12);
  }
  const auto l = cholesky(a);
  ASSERT_TRUE(l.has_value());
  const auto llt = *l * l->transposed();
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) EXPECT_NEAR(llt(i, j), a(i, j), 1e-12);

  Matrix<double> indefinite(2, 2);
  indefinite(0, 0) = 1;
  indefinite(0, 1) = indefinite(1, 0) = 2;
  indefinite(1, 1) = 1;
  EXPECT_FALSE(cholesky(indefinite).has_value());
  Matrix<double> singular(2, 2, 1.0);
  EXPECT_FALSE(solve(singular, {1.0, 1.0}).has_value());
}
