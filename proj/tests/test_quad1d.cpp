#include <gtest/gtest.h>

#include <cmath>

#include "simplex_interp/quad1d.hpp"
#include "test_support.hpp"

using namespace simplex_interp;

namespace {

// Lagrange basis evaluated directly from the node formula.
double lagrange(const std::array<double, 3>& x, std::size_t j, double t) {
  double v = 1.0;
  for (std::size_t k = 0; k < 3; ++k)
    if (k != j) v *= (t - x[k]) / (x[j] - x[k]);
  return v;
}

double sampled_norm(const std::array<double, 3>& x, int steps) {
  double best = 0.0;
  for (int i = 0; i <= steps; ++i) {
    const double t = -1.0 + 2.0 * i / steps;
    double s = 0.0;
    for (std::size_t j = 0; j < 3; ++j) s += std::abs(lagrange(x, j, t));
    best = std::max(best, s);
  }
  return best;
}

double sampled_xi(const std::array<double, 3>& x, int steps) {
  double worst = 0.0;
  for (int i = 0; i <= steps; ++i) {
    const double t = -1.0 + 2.0 * i / steps;
    for (std::size_t j = 0; j < 3; ++j) worst = std::max(worst, -lagrange(x, j, t));
  }
  return std::max(1.0, 3.0 * worst + 1.0);
}

}  // namespace

TEST(Quad1d, ChebyshevLikeNodesGiveMinimum) {
  const std::array<Rational, 3> nodes = {Rational(-1), Rational(0), Rational(1)};
  EXPECT_EQ(quad_norm(nodes), ratio(5, 4));
  EXPECT_EQ(xi_parabola(nodes), ratio(11, 8));
}

TEST(Quad1d, SymmetricNodesExact) {
  const Rational r = ratio(4, 5);
  const std::array<Rational, 3> nodes = {-r, Rational(0), r};
  EXPECT_EQ(quad_norm(nodes), ratio(17, 8));
  EXPECT_EQ(xi_parabola(nodes), ratio(43, 16));
}

TEST(Quad1d, ClosedFormOverManyRadii) {
  for (int k = 1; k <= 50; ++k) {
    const double r = 0.1 + 0.9 * k / 50.0;
    const std::array<double, 3> nodes = {-r, 0.0, r};
    EXPECT_NEAR(quad_norm(nodes), quad_norm_symmetric_closed_form(r), 1e-12) << "r=" << r;
    EXPECT_NEAR(xi_parabola(nodes), xi_symmetric_closed_form(r), 1e-12) << "r=" << r;
  }
}

TEST(Quad1d, MinimizingIntervalEndpoints) {
  const double lo = 2.0 * std::sqrt(2.0) / 3.0;
  // The closed-form branches meet exactly at 2 sqrt(2) / 3.
  EXPECT_NEAR(2.0 / (lo * lo) - 1.0, 1.25, 1e-15);
  for (double r : {lo + 1e-9, 0.95, 1.0}) EXPECT_NEAR(quad_norm(std::array<double, 3>{-r, 0.0, r}), 1.25, 1e-12);
  for (double r : {lo - 1e-6, 0.9}) EXPECT_GT(quad_norm(std::array<double, 3>{-r, 0.0, r}), 1.25 + 1e-7);
  // r = 1 is the right endpoint: nodes cannot leave [-1, 1].
  EXPECT_THROW(quad_norm(std::array<double, 3>{-1.01, 0.0, 1.01}), DegenerateNodes);
}

TEST(Quad1d, NormAndXiMatchDenseSampling) {
  CounterRng rng(81, 0);
  for (int k = 0; k < 200; ++k) {
    std::array<double, 3> x = {rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
    std::sort(x.begin(), x.end());
    if (x[1] - x[0] < 0.05 || x[2] - x[1] < 0.05) continue;
    const double norm = quad_norm(x);
    const double xi = xi_parabola(x);
    const double sn = sampled_norm(x, 20000);
    const double sx = sampled_xi(x, 20000);
    EXPECT_LE(sn, norm + 1e-9);
    EXPECT_NEAR(sn, norm, 1e-3 * norm);
    EXPECT_LE(sx, xi + 1e-9);
    EXPECT_NEAR(sx, xi, 1e-3 * xi);
  }
}

TEST(Quad1d, ChainIdentityHoldsExactly) {
  // Every node triple satisfies xi = (3 norm - 1) / 2.
  CounterRng rng(82, 0);
  int checked = 0;
  while (checked < 300) {
    std::array<Rational, 3> x;
    for (auto& v : x) v = ratio(static_cast<long long>(rng.below(41)) - 20, 20);
    if (x[0] == x[1] || x[1] == x[2] || x[0] == x[2]) continue;
    ++checked;
    EXPECT_EQ(xi_parabola(x), (Rational(3) * quad_norm(x) - 1) / 2);
    const auto c = bound_chain_check_1d(x);
    EXPECT_NEAR(c.residual, 0.0, 1e-12);
    EXPECT_GE(c.lower_residual, -1e-12);
  }
}

TEST(Quad1d, GridMinimumIsFiveQuarters) {
  // All distinct node triples on a 1/20 grid of [-1, 1].
  double best = 1e300;
  for (int a = -20; a <= 20; ++a)
    for (int b = a + 1; b <= 20; ++b)
      for (int c = b + 1; c <= 20; ++c) {
        const std::array<double, 3> x = {a / 20.0, b / 20.0, c / 20.0};
        best = std::min(best, quad_norm(x));
      }
  EXPECT_NEAR(best, 1.25, 1e-12);
}

TEST(Quad1d, BasisIsLagrange) {
  const std::array<Rational, 3> x = {ratio(-1, 2), ratio(1, 3), Rational(1)};
  const QuadProjector<Rational> q(x);
  for (std::size_t j = 0; j < 3; ++j)
    for (std::size_t k = 0; k < 3; ++k) EXPECT_EQ(q.basis(j, q.nodes()[k]), Rational(j == k ? 1 : 0));
  for (long long p = -10; p <= 10; ++p) {
    const Rational t = ratio(p, 10);
    Rational sum(0);
    for (std::size_t j = 0; j < 3; ++j) sum += q.basis(j, t);
    EXPECT_EQ(sum, Rational(1));
  }
}

TEST(Quad1d, RejectsDegenerateNodes) {
  EXPECT_THROW(QuadProjector<Rational>({Rational(0), Rational(0), Rational(1)}), DegenerateNodes);
  EXPECT_THROW(QuadProjector<Rational>({Rational(0), ratio(1, 2), Rational(2)}), DegenerateNodes);
  // Order does not matter.
  EXPECT_EQ(quad_norm(std::array<Rational, 3>{Rational(1), Rational(-1), Rational(0)}), ratio(5, 4));
}
