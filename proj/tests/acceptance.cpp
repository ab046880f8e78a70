// Acceptance run: one PASS/FAIL line per criterion, details for every failed check.
// Exit status is nonzero when any criterion fails.

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "simplex_interp/absorption.hpp"
#include "simplex_interp/bound_table.hpp"
#include "simplex_interp/ellipsoid.hpp"
#include "simplex_interp/extremal.hpp"
#include "simplex_interp/hadamard.hpp"
#include "simplex_interp/legendre.hpp"
#include "simplex_interp/projector.hpp"
#include "simplex_interp/quad1d.hpp"
#include "test_support.hpp"

using namespace simplex_interp;
using namespace testing_support;

namespace {

class Criterion {
 public:
  explicit Criterion(std::string title) : title_(std::move(title)) {}

  void check(bool ok, const std::string& what) {
    ++checks_;
    if (!ok) failures_.push_back(what);
  }
  void note(std::string text) { notes_.push_back(std::move(text)); }
  bool passed() const { return failures_.empty(); }

  void report(std::ostream& out, double seconds) const {
    out << (passed() ? "PASS " : "FAIL ") << title_ << " (" << checks_ << " checks, " << seconds << " s)\n";
    constexpr std::size_t shown = 12;
    for (std::size_t k = 0; k < failures_.size() && k < shown; ++k) out << "    failed: " << failures_[k] << '\n';
    if (failures_.size() > shown) out << "    ... " << failures_.size() - shown << " more failures\n";
    for (const auto& n : notes_) out << "    note: " << n << '\n';
  }

 private:
  std::string title_;
  std::size_t checks_ = 0;
  std::vector<std::string> failures_;
  std::vector<std::string> notes_;
};

template <class... Args>
std::string msg(const Args&... args) {
  std::ostringstream s;
  s.precision(17);
  (s << ... << args);
  return s.str();
}

std::string str(const Rational& r) {
  std::ostringstream s;
  s << r;
  return s.str();
}

double circumradius(const Simplex<double>& s) {
  // Center c solves 2 (x^j - x^0) . c = |x^j|^2 - |x^0|^2.
  const std::size_t n = s.dim();
  std::vector<std::vector<double>> a(n, std::vector<double>(n));
  std::vector<double> b(n);
  const auto& x0 = s.vertex(0);
  for (std::size_t j = 1; j <= n; ++j) {
    double nj = 0.0, n0 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      a[j - 1][i] = 2.0 * (s.vertex(j)[i] - x0[i]);
      nj += s.vertex(j)[i] * s.vertex(j)[i];
      n0 += x0[i] * x0[i];
    }
    b[j - 1] = nj - n0;
  }
  const double d = leibniz_det(a);
  double r2 = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    auto ai = a;
    for (std::size_t j = 0; j < n; ++j) ai[j][i] = b[j];
    const double ci = leibniz_det(ai) / d;
    r2 += (ci - x0[i]) * (ci - x0[i]);
  }
  return std::sqrt(r2);
}

// Binomial-sum form of the standardized Legendre polynomial.
double legendre_binomial_sum(std::size_t n, double t) {
  std::vector<double> row{1.0};
  for (std::size_t k = 1; k <= n; ++k) {
    std::vector<double> next(k + 1, 1.0);
    for (std::size_t j = 1; j < k; ++j) next[j] = row[j - 1] + row[j];
    row = std::move(next);
  }
  double s = 0.0;
  for (std::size_t k = 0; k <= n; ++k)
    s += row[k] * row[k] * std::pow((t - 1.0) / 2.0, static_cast<double>(n - k)) *
         std::pow((t + 1.0) / 2.0, static_cast<double>(k));
  return s;
}

void exact_constants(Criterion& c) {
  const char* theta[] = {"1", "5/3", "2", "11/5"};
  for (std::size_t n = 1; n <= 4; ++n) {
    const auto t = theta_ball(n);
    c.check(t.is_rational() && t.str() == theta[n - 1], msg("theta_", n, "(B) = ", t.str(), ", want ", theta[n - 1]));
  }
  for (long long m = 2; m * m <= 100; ++m) {
    const auto n = static_cast<std::size_t>(m * m - 1);
    const auto t = theta_ball(n);
    c.check(t.is_rational() && t.rational_part() == Rational(m), msg("theta_", n, "(B) = ", t.str(), ", want ", m));
  }

  const auto h = norm_on_polytope(to_regular_simplex(h8()), Body<Rational>::symmetric_cube(7)).norm;
  const auto lb = theta_cube_lower_bound(7);
  c.check(h == ratio(5, 2), msg("H8 simplex norm ", str(h), ", want 5/2"));
  c.check(lb.value == 2.5 && lb.classic == 2.5, msg("theta_7 lower bound ", lb.value, ", want 5/2"));

  const auto q3 = Body<Rational>::unit_cube(3);
  c.check(xi_polytope(q3, s_prime()).xi == 3, "xi(Q3; S') != 3");
  c.check(xi_polytope(q3, s_double_prime()).xi == 3, "xi(Q3; S'') != 3");
  for (long long n = 3; n <= 10; ++n) {
    const auto r = xi_polytope(Body<Rational>::unit_cube(static_cast<std::size_t>(n)), s_star(static_cast<std::size_t>(n)));
    c.check(r.xi == ratio(n * n - 3, n - 1), msg("xi(Q_", n, "; S*) = ", str(r.xi)));
    c.check(r.alpha == Rational(n), msg("alpha(Q_", n, "; S*) = ", str(r.alpha)));
  }

  const auto q2 = Body<double>::unit_cube(2);
  const double gxi = xi_polytope(q2, golden_triangle()).xi;
  const double gnorm = norm_on_polytope(golden_triangle(), q2).norm;
  c.check(std::abs(gxi - (3.0 * std::sqrt(5.0) / 5.0 + 1.0)) <= 1e-12, msg("golden xi ", gxi));
  c.check(std::abs(gnorm - (2.0 * std::sqrt(5.0) / 5.0 + 1.0)) <= 1e-12, msg("golden norm ", gnorm));

  const Rational mes[] = {2, ratio(11, 4), ratio(17, 6)};
  for (std::size_t n = 1; n <= 3; ++n) {
    const Rational m = chi_sum_form(n, Rational(2));
    c.check(m == mes[n - 1] && m == chi(n, Rational(2)) / Rational(big_factorial(n)), msg("mes_", n, "(E_2) = ", str(m)));
  }

  const std::array<Rational, 3> cheb = {Rational(-1), Rational(0), Rational(1)};
  c.check(quad_norm(cheb) == ratio(5, 4), "quad1d theta != 5/4");
  c.check(xi_parabola(cheb) == ratio(11, 8), "quad1d xi != 11/8");
  const double lo = 2.0 * std::sqrt(2.0) / 3.0;
  c.check(std::abs(quad_norm_symmetric_closed_form(lo) - 1.25) <= 1e-15, "closed form at 2 sqrt(2)/3 is not 5/4");
  c.check(quad_norm_symmetric_closed_form(lo - 1e-6) > 1.25, "closed form below 2 sqrt(2)/3 is not above 5/4");
  for (double r : {lo + 1e-9, 0.95, 1.0})
    c.check(std::abs(quad_norm(std::array<double, 3>{-r, 0.0, r}) - 1.25) <= 1e-12, msg("quad1d norm at r = ", r));
  bool rejected = false;
  try {
    quad_norm(std::array<double, 3>{-1.01, 0.0, 1.01});
  } catch (const DegenerateNodes&) {
    rejected = true;
  }
  c.check(rejected, "nodes outside [-1, 1] accepted");
}

void oracle_equivalence(Criterion& c) {
  CounterRng rng(1002, 0);
  for (std::size_t n = 2; n <= 5; ++n) {
    const auto cube = Body<double>::unit_cube(n);
    const auto ball = Body<double>::unit_ball(n);
    for (int k = 0; k < 200; ++k) {
      const auto s = random_box_simplex(rng, n);
      const auto r = xi_polytope(cube, s);
      const double ox = xi_oracle(cube, s), oa = alpha_oracle(cube, s);
      c.check(std::abs(ox - r.xi) <= 1e-6, msg("cube n=", n, " xi ", r.xi, " oracle ", ox));
      c.check(std::abs(oa - r.alpha) <= 1e-6, msg("cube n=", n, " alpha ", r.alpha, " oracle ", oa));
      const auto b = random_ball_simplex(rng, n);
      const auto rb = xi_ball_report(b, ball.center, 1.0);
      const double bx = xi_oracle(ball, b), ba = alpha_oracle(ball, b);
      c.check(std::abs(bx - rb.xi) <= 1e-6, msg("ball n=", n, " xi ", rb.xi, " oracle ", bx));
      c.check(std::abs(ba - rb.alpha) <= 1e-6, msg("ball n=", n, " alpha ", rb.alpha, " oracle ", ba));
    }
  }
}

void property_suites(Criterion& c) {
  constexpr int count = 500;
  CounterRng rng(1003, 0);
  for (int k = 0; k < count; ++k) {
    const std::size_t n = 1 + k % 6;
    const auto s = random_box_simplex(rng, n, -1.0, 1.0);
    Point<double> x(n);
    for (auto& v : x) v = rng.uniform(-2.0, 2.0);
    double sum = 0.0;
    for (double l : barycentric(s, x)) sum += l;
    c.check(std::abs(sum - 1.0) <= 1e-12, msg("partition of unity n=", n, " sum ", sum));
  }
  for (int k = 0; k < count; ++k) {
    const std::size_t n = 1 + k % 6;
    const auto s = random_box_simplex(rng, n);
    const auto r = xi_polytope(Body<double>::unit_cube(n), s);
    const double dn = static_cast<double>(n);
    c.check(r.alpha <= r.xi + 1e-9 && r.xi >= dn - 1e-9 && r.alpha >= dn - 1e-9,
            msg("cube n=", n, " xi ", r.xi, " alpha ", r.alpha));
    const auto b = random_ball_simplex(rng, n);
    const auto rb = xi_ball_report(b, Point<double>(n, 0.0), 1.0);
    c.check(rb.alpha <= rb.xi + 1e-9 && rb.xi >= dn - 1e-9 && rb.alpha >= dn - 1e-9,
            msg("ball n=", n, " xi ", rb.xi, " alpha ", rb.alpha));
  }
  for (int k = 0; k < count; ++k) {
    const std::size_t n = 2 + k % 5;
    const auto s = random_box_simplex(rng, n);
    const double big_r = circumradius(s), r = inradius_incenter(s).radius;
    c.check(big_r >= static_cast<double>(n) * r - 1e-9, msg("Euler n=", n, " R ", big_r, " r ", r));
  }
  for (int k = 0; k < count; ++k) {
    const std::size_t n = 1 + k % 6;
    const auto cc = bound_chain_check(random_box_simplex(rng, n), Body<double>::unit_cube(n));
    c.check(cc.holds, msg("cube bound chain n=", n, " lower ", cc.lower_residual, " upper ", cc.upper_residual));
    const auto cb = bound_chain_check(random_ball_simplex(rng, n), Body<double>::unit_ball(n));
    c.check(cb.holds, msg("ball bound chain n=", n, " lower ", cb.lower_residual, " upper ", cb.upper_residual));
  }
  for (int k = 0; k < count; ++k) {
    const std::size_t n = 2 + k % 5;
    const auto t = alpha_ball_terms(random_box_simplex(rng, n, -1.0, 1.0));
    const double tol = 1e-9 * t.gradient_sum;
    c.check(std::abs(t.inverse_heights - t.gradient_sum) < tol && std::abs(t.inverse_inradius - t.gradient_sum) < tol &&
                std::abs(t.surface_ratio - t.gradient_sum) < tol,
            msg("four alpha expressions disagree at n=", n));
  }
  for (int k = 0; k < count; ++k) {
    const std::size_t n = 1 + k % 6;
    const std::size_t m = 1 + rng.below(n);
    const auto r = mean_square_check(random_box_simplex(rng, n, -1.0, 1.0), m);
    c.check(r.residual < 1e-10, msg("mean-square n=", n, " m=", m, " residual ", r.residual));
  }
  for (int k = 0; k < count; ++k) {
    const std::size_t n = 1 + k % 6;
    const std::size_t m = 1 + rng.below(n);
    const auto w = witness_points(random_ball_simplex(rng, n, k % 3 == 0), m);
    double smallest = 1e300;
    for (double v : w.norms) smallest = std::min(smallest, v);
    c.check(smallest <= 1.0 + 1e-9, msg("witness n=", n, " m=", m, " min norm ", smallest));
  }
  for (int k = 0; k < count; ++k) {
    const std::size_t n = 1 + k % 6;
    const auto s = random_ball_simplex(rng, n, k % 2 == 0);
    const double norm = norm_on_ball(s, Point<double>(n, 0.0), 1.0).norm;
    const double theta = theta_ball(n).to_double();
    c.check(norm >= theta - 1e-9, msg("ball norm n=", n, " ", norm, " < theta ", theta));
  }
}

void legendre_suite(Criterion& c) {
  for (std::size_t n = 0; n <= 30; ++n)
    for (double t : {1.0, 1.25, 1.5, 2.0, 3.0, 4.5, 7.0}) {
      const double ref = legendre_binomial_sum(n, t);
      const double v = chi(n, t);
      c.check(std::abs(v - ref) <= 1e-9 * std::abs(ref), msg("chi_", n, "(", t, ") = ", v, ", sum ", ref));
    }
  for (std::size_t n = 1; n <= 30; ++n)
    for (double t : {1.0, 1.1, 1.5, 2.0, 3.0, 10.0}) {
      const double back = chi_inv(n, chi(n, t));
      c.check(std::abs(back - t) <= 1e-10 * t, msg("chi_inv round trip n=", n, " t=", t, " got ", back));
    }
  for (std::size_t n = 1; n <= 6; ++n)
    for (double gamma : {1.0, 2.0, 3.5}) {
      const double exact = chi(n, gamma) / std::tgamma(static_cast<double>(n) + 1.0);
      const auto mc = measure_E_monte_carlo(n, gamma, 1000000, 2024);
      c.check(std::abs(mc.estimate - exact) <= 4.0 * mc.std_error,
              msg("Monte Carlo n=", n, " gamma=", gamma, " estimate ", mc.estimate, " exact ", exact));
    }
}

void search_reproduction(Criterion& c) {
  const Rational nu[] = {1, ratio(1, 2), ratio(1, 3), ratio(1, 8), ratio(1, 24), ratio(1, 80)};
  for (std::size_t n = 1; n <= 6; ++n) {
    const auto start = std::chrono::steady_clock::now();
    const auto r = max_volume_binary(n);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    c.check(r.best_value == nu[n - 1], msg("nu_", n, " = ", str(r.best_value), ", want ", str(nu[n - 1])));
    for (const auto& d : axial_diameters(r.best_simplex)) c.check(d == 1, msg("n=", n, " axial diameter ", str(d)));
    if (n == 6) {
      c.check(secs < 180.0, msg("n=6 search took ", secs, " s"));
      c.note(msg("exhaustive n=6 search: ", secs, " s, ", r.evaluations, " evaluations"));
    }
  }
}

void hadamard_batch(Criterion& c, const std::string& h16_file, const std::string& h24_file) {
  const auto rows = mu_statistics_batch({construct(16)});
  c.check(rows.front().norm == 4 || rows.front().norm == ratio(7, 2), msg("Sylvester 16 norm ", str(rows.front().norm)));
  c.check(matches_some_row(rows.front(), mu15_reference()), "Sylvester 16 histogram matches no reference row");

  if (h16_file.empty() || !std::filesystem::exists(h16_file)) {
    c.note("skipped: order-16 class representatives not supplied (--h16 FILE)");
  } else {
    const auto r16 = mu_statistics_batch(load_matrix_file(h16_file));
    std::size_t fours = 0, halves = 0;
    for (const auto& r : r16) {
      fours += r.norm == 4;
      halves += r.norm == ratio(7, 2);
    }
    c.check(r16.size() == 5 && fours == 3 && halves == 2, msg("order-16 norms: ", fours, " x 4, ", halves, " x 7/2 of ", r16.size()));
    c.check(matches_as_multiset(r16, mu15_reference()), "order-16 histograms do not match the reference table");
  }

  if (h24_file.empty() || !std::filesystem::exists(h24_file)) {
    c.note("skipped: order-24 representatives not supplied (--h24 FILE)");
  } else {
    const auto r24 = mu_statistics_batch(load_matrix_file(h24_file));
    std::size_t a = 0, b = 0;
    for (const auto& r : r24) {
      a += r.norm == ratio(14, 3);
      b += r.norm == ratio(9, 2);
    }
    c.check(r24.size() == 60 && a == 56 && b == 4, msg("order-24 norms: ", a, " x 14/3, ", b, " x 9/2 of ", r24.size()));
  }
}

void bound_strictness(Criterion& c) {
  std::vector<std::size_t> failing;
  for (std::size_t n = 4; n <= 57; ++n) {
    const auto r = sufficient_strictness_check(n, NuSource::hadamard_bound);
    c.check(r.holds, msg("strictness condition false at n=", n, " (product ", r.product, ")"));
    if (!r.holds) failing.push_back(n);
  }
  if (!failing.empty()) {
    c.note(msg("strictness condition with the Hadamard nu bound fails for n = ", failing.front(), "..", failing.back()));
    // Diagnostic only: where the condition does hold.
    std::size_t from = 400;
    while (from > 3 && sufficient_strictness_check(from - 1, NuSource::hadamard_bound).holds) --from;
    c.note(msg("it holds for every n in ", from, "..400, consistent with n >= 57 rather than n <= 57"));
  }
  const double e = std::exp(1.0);
  for (std::size_t n = 2; n <= 60; ++n) {
    const double v = theta_cube_lower_bound(n).value;
    c.check(v > std::sqrt(n - 1.0) / e, msg("lower bound n=", n, " ", v, " <= sqrt(n-1)/e"));
    if (n >= 9) {
      c.check(v > 2.0 * std::sqrt(2.0) / (3.0 * e) * std::sqrt(static_cast<double>(n)),
              msg("lower bound n=", n, " ", v, " <= (2 sqrt 2 / 3e) sqrt n"));
    }
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"simplex-interp acceptance run"};
  std::string h16 = std::getenv("SIMPLEX_INTERP_H16") ? std::getenv("SIMPLEX_INTERP_H16") : "";
  std::string h24 = std::getenv("SIMPLEX_INTERP_H24") ? std::getenv("SIMPLEX_INTERP_H24") : "";
  app.add_option("--h16", h16, "order-16 class representatives (token or text format)");
  app.add_option("--h24", h24, "order-24 representatives");
  CLI11_PARSE(app, argc, argv);

  struct Item {
    std::string title;
    std::function<void(Criterion&)> run;
  };
  const std::vector<Item> items = {
      {"1 exact constants", exact_constants},
      {"2 formula vs oracle xi/alpha", oracle_equivalence},
      {"3 identity and property suites", property_suites},
      {"4 Legendre suite", legendre_suite},
      {"5 max-volume search", search_reproduction},
      {"6 Hadamard batch statistics", [&](Criterion& c) { hadamard_batch(c, h16, h24); }},
      {"7 bound strictness and lower bounds", bound_strictness},
  };

  bool all = true;
  for (const auto& item : items) {
    Criterion c(item.title);
    const auto start = std::chrono::steady_clock::now();
    try {
      item.run(c);
    } catch (const std::exception& e) {
      c.check(false, msg("exception: ", e.what()));
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    c.report(std::cout, secs);
    std::cout.flush();
    all = all && c.passed();
  }
  return all ? EXIT_SUCCESS : EXIT_FAILURE;
}
