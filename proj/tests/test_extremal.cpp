#include <gtest/gtest.h>

#include <cmath>

#include "simplex_interp/extremal.hpp"
#include "simplex_interp/projector.hpp"
#include "test_support.hpp"

using namespace simplex_interp;
using namespace testing_support;

namespace {

// Exhaustive max |det| over n x n 0/1 matrices by Leibniz, for tiny n.
long long brute_max_binary_det(std::size_t n) {
  const std::uint64_t cells = n * n;
  long long best = 0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << cells); ++mask) {
    std::vector<std::vector<long long>> a(n, std::vector<long long>(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) a[i][j] = static_cast<long long>((mask >> (i * n + j)) & 1U);
    best = std::max(best, std::llabs(leibniz_det(a)));
  }
  return best;
}

}  // namespace

TEST(Extremal, ExhaustiveMaxVolumeMatchesKnownValues) {
  const std::vector<Rational> nu = {1, ratio(1, 2), ratio(1, 3), ratio(1, 8), ratio(1, 24), ratio(1, 80)};
  for (std::size_t n = 1; n <= 6; ++n) {
    const auto r = max_volume_binary(n);
    EXPECT_EQ(r.best_value, nu[n - 1]) << "n=" << n;
    EXPECT_EQ(volume(r.best_simplex), r.best_value);
    for (const auto& v : r.best_simplex.vertices())
      for (const auto& x : v) EXPECT_TRUE(x == 0 || x == 1);
    for (const auto& d : axial_diameters(r.best_simplex)) EXPECT_EQ(d, Rational(1)) << "n=" << n;
  }
}

TEST(Extremal, ExhaustiveAgreesWithBruteForceForTinyOrders) {
  for (std::size_t n = 1; n <= 4; ++n) {
    const auto r = max_volume_binary(n);
    EXPECT_EQ(r.best_value * Rational(big_factorial(n)), Rational(brute_max_binary_det(n))) << "n=" << n;
  }
}

TEST(Extremal, ExhaustiveIsThreadIndependent) {
  MaxVolumeOptions one, many;
  one.threads = 1;
  many.threads = 4;
  const auto a = max_volume_binary(5, one);
  const auto b = max_volume_binary(5, many);
  EXPECT_EQ(a.best_simplex.vertices(), b.best_simplex.vertices());
  EXPECT_EQ(a.evaluations, b.evaluations);
}

TEST(Extremal, LocalSearchStaysBelowOptimumAndIsSeeded) {
  MaxVolumeOptions o;
  o.exhaustive = false;
  o.budget = 20000;
  o.seed = 5;
  const auto a = max_volume_binary(7, o);
  const auto b = max_volume_binary(7, o);
  EXPECT_EQ(a.best_simplex.vertices(), b.best_simplex.vertices());
  EXPECT_GT(a.best_value, Rational(0));
  EXPECT_LE(a.best_value, ratio(2, 315));
  EXPECT_LE(a.evaluations, o.budget);
  // At n = 5 a modest budget reaches the optimum.
  o.budget = 50000;
  EXPECT_EQ(max_volume_binary(5, o).best_value, ratio(1, 24));
}

TEST(Extremal, SearchLimits) {
  EXPECT_THROW(max_volume_binary(7), BudgetExceeded);
  EXPECT_THROW(max_volume_binary(13, {false, 10, 1, 0}), BudgetExceeded);
  MaxVolumeOptions tiny;
  tiny.exhaustive = false;
  tiny.budget = 0;
  EXPECT_THROW(max_volume_binary(4, tiny), BudgetExceeded);
  EXPECT_THROW(minimize_norm_cube(11), DimensionMismatch);
}

TEST(Extremal, StarSimplexProperties) {
  for (std::size_t n = 2; n <= 8; ++n) {
    const auto s = s_star(n);
    for (const auto& d : axial_diameters(s)) EXPECT_EQ(d, Rational(1));
  }
  // Maximal volume exactly for n = 2, 3, 4.
  for (std::size_t n = 2; n <= 6; ++n) {
    const bool maximal = volume(s_star(n)) == max_volume_binary(n).best_value;
    EXPECT_EQ(maximal, n <= 4) << "n=" << n;
  }
}

TEST(Extremal, StarSimplexReplacementShrinksVolume) {
  for (std::size_t n = 3; n <= 5; ++n) {
    CounterRng rng(71, n);
    const auto s = to_double(s_star(n));
    const double base = volume(s);
    for (int t = 0; t < 10000; ++t) {
      auto v = s.vertices();
      const std::size_t j = rng.below(n + 1);
      for (auto& x : v[j]) x = rng.uniform();
      std::vector<std::vector<double>> rows = vertex_rows(v);
      const double vol = std::abs(leibniz_det(rows)) / static_cast<double>(big_factorial(n).convert_to<long long>());
      EXPECT_LT(vol, base) << "n=" << n;
    }
  }
}

TEST(Extremal, XiOfMaxVolumeSimplicesIsBounded) {
  for (std::size_t n = 1; n <= 6; ++n) {
    const auto s = max_volume_binary(n).best_simplex;
    const auto r = xi_polytope(Body<Rational>::unit_cube(n), s);
    EXPECT_GE(r.xi, Rational(static_cast<long long>(n)));
    EXPECT_LE(r.xi, Rational(static_cast<long long>(n + 2)));
    EXPECT_EQ(r.alpha, Rational(static_cast<long long>(n)));
  }
}

TEST(Extremal, MinNormNeverBeatsLowerBoundsNorLosesToSeeds) {
  MinNormOptions o;
  o.budget = 1500;
  for (std::size_t n = 1; n <= 5; ++n) {
    const auto r = minimize_norm_cube(n, o);
    const double lb = theta_cube_lower_bound(n).value;
    EXPECT_GE(r.best_value, lb - 1e-9) << "n=" << n;
    double seed_best = 1e300;
    for (const auto& s : min_norm_seeds(n))
      seed_best = std::min(seed_best, norm_on_polytope(s, Body<double>::unit_cube(n)).norm);
    EXPECT_LE(r.best_value, seed_best + 1e-12) << "n=" << n;
    // The reported simplex lies in the cube and attains the reported value.
    for (const auto& v : r.best_simplex.vertices())
      for (double x : v) {
        EXPECT_GE(x, 0.0);
        EXPECT_LE(x, 1.0);
      }
    EXPECT_NEAR(norm_on_polytope(r.best_simplex, Body<double>::unit_cube(n)).norm, r.best_value, 1e-12);
  }
}

TEST(Extremal, MinNormHitsKnownOptimaFromSeeds) {
  MinNormOptions o;
  o.budget = 200;
  EXPECT_NEAR(minimize_norm_cube(1, o).best_value, 1.0, 1e-12);
  EXPECT_NEAR(minimize_norm_cube(3, o).best_value, 2.0, 1e-12);
  EXPECT_NEAR(minimize_norm_cube(7, o).best_value, 2.5, 1e-12);
  EXPECT_LE(minimize_norm_cube(2, o).best_value, 2.0 * std::sqrt(5.0) / 5.0 + 1.0 + 1e-12);
}

TEST(Extremal, MinNormIsDeterministic) {
  MinNormOptions o;
  o.budget = 800;
  o.seed = 3;
  o.threads = 1;
  const auto a = minimize_norm_cube(4, o);
  o.threads = 4;
  const auto b = minimize_norm_cube(4, o);
  EXPECT_EQ(a.best_value, b.best_value);
  EXPECT_EQ(a.best_simplex.vertices(), b.best_simplex.vertices());
}

TEST(Extremal, CatalogNames) {
  EXPECT_EQ(catalog_exact("Sstar(4)").vertices(), s_star(4).vertices());
  EXPECT_EQ(catalog_exact("Sprime3").vertices(), s_prime().vertices());
  EXPECT_EQ(catalog("golden2").dim(), 2u);
  EXPECT_EQ(catalog("regular_ball(5)").dim(), 5u);
  EXPECT_EQ(catalog_exact("hadamard_cube(8)").dim(), 7u);
  EXPECT_EQ(catalog_exact("hadamard_unit(4)").dim(), 3u);
  EXPECT_FALSE(catalog_is_exact("golden2"));
  EXPECT_TRUE(catalog_is_exact("Sstar(3)"));
  EXPECT_THROW(catalog_exact("golden2"), UnknownName);
  EXPECT_THROW(catalog_exact("Sstar"), UnknownName);
  EXPECT_THROW(catalog_exact("Sstar(x)"), UnknownName);
  EXPECT_THROW(catalog("nonesuch"), UnknownName);
  EXPECT_THROW(catalog_exact("hadamard_cube(6)"), UnsupportedOrder);
  for (const auto& name : catalog_names()) EXPECT_FALSE(name.empty());
}

TEST(Extremal, HadamardUnitSimplexHasUnitDiameters) {
  for (std::size_t order : {4u, 8u, 12u}) {
    for (const auto& d : axial_diameters(hadamard_unit(order))) EXPECT_EQ(d, Rational(1));
  }
}
