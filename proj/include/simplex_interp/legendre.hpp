#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "simplex_interp/errors.hpp"
#include "simplex_interp/hadamard.hpp"
#include "simplex_interp/parallel.hpp"
#include "simplex_interp/rng.hpp"
#include "simplex_interp/scalar.hpp"

namespace simplex_interp {

// Standardized Legendre polynomial (chi_n(1) = 1) by the three-term recurrence
// (k+1) chi_{k+1} = (2k+1) t chi_k - k chi_{k-1}.
template <Scalar T>
T chi(std::size_t n, const T& t) {
  if (n == 0) return T(1);
  T prev(1), cur = t;
  for (std::size_t k = 1; k < n; ++k) {
    const T kk(static_cast<long long>(k));
    T next = (T(static_cast<long long>(2 * k + 1)) * t * cur - kk * prev) / T(static_cast<long long>(k + 1));
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

inline double chi_derivative(std::size_t n, double t) {
  if (n == 0) return 0.0;
  double p_prev = 1.0, p = t, d_prev = 0.0, d = 1.0;
  for (std::size_t k = 1; k < n; ++k) {
    const double p_next = ((2.0 * k + 1.0) * t * p - k * p_prev) / (k + 1.0);
    const double d_next = d_prev + (2.0 * k + 1.0) * p;
    p_prev = p;
    p = p_next;
    d_prev = d;
    d = d_next;
  }
  return d;
}

template <Scalar T>
T binomial(std::size_t n, std::size_t k) {
  T c(1);
  for (std::size_t i = 1; i <= k; ++i)
    c = c * T(static_cast<long long>(n - k + i)) / T(static_cast<long long>(i));
  return c;
}

// Measure of E_{n,gamma} = {x : sum |x_j| + |1 - sum x_j| <= gamma} as the
// binomial sum (1/(2^n n!)) sum_i C(n,i)^2 (gamma-1)^{n-i} (gamma+1)^i.
template <Scalar T>
T chi_sum_form(std::size_t n, const T& gamma) {
  T sum(0);
  for (std::size_t i = 0; i <= n; ++i) {
    const T c = binomial<T>(n, i);
    T term = c * c;
    for (std::size_t a = 0; a < n - i; ++a) term *= gamma - T(1);
    for (std::size_t b = 0; b < i; ++b) term *= gamma + T(1);
    sum += term;
  }
  T denom(1);
  for (std::size_t k = 1; k <= n; ++k) denom *= T(static_cast<long long>(2 * k));
  return sum / denom;
}

// (s / C(n, floor(n/2)))^{1/n}, a strict lower bound for chi_n^{-1}(s) when n > 1.
inline double chi_inv_lower_bound(std::size_t n, double s) {
  return std::pow(s / binomial<double>(n, n / 2), 1.0 / static_cast<double>(n));
}

// Inverse of chi_n on [1, inf): Newton steps kept inside a shrinking bracket.
// chi_n(t) >= t^n bounds the root by s^{1/n}.
inline double chi_inv(std::size_t n, double s, double tol = 1e-13) {
  if (!(s >= 1.0)) throw DimensionMismatch("chi_inv needs s >= 1");
  if (n == 0) throw DimensionMismatch("chi_0 is constant");
  if (s == 1.0) return 1.0;
  double lo = std::max(1.0, n > 1 ? chi_inv_lower_bound(n, s) : 1.0);
  double hi = std::pow(s, 1.0 / static_cast<double>(n));
  if (hi < lo) hi = lo;
  double t = 0.5 * (lo + hi);
  for (int it = 0; it < 400; ++it) {
    const double f = chi(n, t) - s;
    if (f > 0.0)
      hi = t;
    else
      lo = t;
    if (hi - lo <= tol * hi) return 0.5 * (lo + hi);
    const double d = chi_derivative(n, t);
    double next = d > 0.0 ? t - f / d : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - t) <= tol * t) {
      // Confirm by bracketing one ulp-scale step each side.
      const double step = 4.0 * tol * t;
      if (chi(n, next - step) <= s && chi(n, next + step) >= s) return next;
    }
    t = next;
  }
  throw NoConvergence("chi_inv did not converge for n = " + std::to_string(n));
}

struct MonteCarloEstimate {
  double estimate;
  double std_error;
  std::uint64_t samples;
  std::uint64_t hits;
};

// Uniform sampling of the box [-(g+1)/2, (g+1)/2]^n with a counter-based RNG.
// Chunk c uses stream c, so the result is independent of thread count.
inline MonteCarloEstimate measure_E_monte_carlo(std::size_t n, double gamma, std::uint64_t samples,
                                                std::uint64_t seed, unsigned threads = 0) {
  if (!(gamma >= 1.0)) throw DimensionMismatch("gamma must be >= 1");
  if (n == 0 || samples == 0) throw DimensionMismatch("need n >= 1 and samples >= 1");
  constexpr std::uint64_t chunk = 1 << 16;
  const std::uint64_t chunks = (samples + chunk - 1) / chunk;
  const double half = 0.5 * (gamma + 1.0);
  std::vector<std::uint64_t> hits(chunks, 0);
  parallel_for(chunks, threads, [&](std::size_t c) {
    CounterRng rng(seed, c);
    const std::uint64_t count = std::min<std::uint64_t>(chunk, samples - c * chunk);
    std::uint64_t local = 0;
    for (std::uint64_t k = 0; k < count; ++k) {
      double abs_sum = 0.0, sum = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        const double x = rng.uniform(-half, half);
        abs_sum += std::abs(x);
        sum += x;
      }
      if (abs_sum + std::abs(1.0 - sum) <= gamma) ++local;
    }
    hits[c] = local;
  });
  std::uint64_t total = 0;
  for (auto h : hits) total += h;
  const double box = std::pow(2.0 * half, static_cast<double>(n));
  const double p = static_cast<double>(total) / static_cast<double>(samples);
  return {box * p, box * std::sqrt(p * (1.0 - p) / static_cast<double>(samples)), samples, total};
}

inline double log_factorial(std::size_t n) {
  double s = 0.0;
  for (std::size_t k = 2; k <= n; ++k) s += std::log(static_cast<double>(k));
  return s;
}

// log of (n+1)^{(n+1)/2} / (2^n n!), the Hadamard bound on nu_n.
inline double log_nu_hadamard_bound(std::size_t n) {
  const double m = static_cast<double>(n + 1);
  return 0.5 * m * std::log(m) - static_cast<double>(n) * std::numbers::ln2 - log_factorial(n);
}

// Tightest available upper bound on log nu_n: Hadamard, the even-n bound and
// the n = 1 mod 4 bound.
inline double log_nu_upper_bound(std::size_t n) {
  double best = log_nu_hadamard_bound(n);
  const double nd = static_cast<double>(n);
  if (n % 2 == 0) {
    best = std::min(best, 0.5 * nd * std::log(nd) + 0.5 * std::log(2.0 * nd + 1.0) - nd * std::numbers::ln2 -
                              log_factorial(n));
  }
  if (n > 1 && n % 4 == 1) {
    const double m = nd - 1.0;
    best = std::min(best, 0.5 * m * std::log(m) - m * std::numbers::ln2 - log_factorial(n - 1));
  }
  return best;
}

struct VolumeConstants {
  std::size_t n = 0;
  std::optional<Rational> nu_exact;  // maximum simplex volume in [0,1]^n
  double nu_lower = 0.0;
  double nu_upper = 0.0;
  std::optional<BigInt> h_exact;  // maximum 0/1 determinant of order n
  double h_lower = 0.0;
  double h_upper = 0.0;
  double kappa = 0.0;  // volume of the unit ball
  double sigma = 0.0;  // volume of the regular simplex inscribed in it
  std::string nu_provenance;  // exact-table | hadamard-exact | bounded
};

// Volume of B_n from the even/odd closed forms (no general Gamma).
inline double ball_volume(std::size_t n) {
  const std::size_t k = n / 2;
  const double pi = std::numbers::pi;
  double v;
  if (n % 2 == 0) {
    v = 1.0;
    for (std::size_t i = 1; i <= k; ++i) v *= pi / static_cast<double>(i);
  } else {
    v = 2.0;  // 2 k! (4 pi)^k / (2k+1)!
    for (std::size_t i = 1; i <= k; ++i)
      v *= static_cast<double>(i) * 4.0 * pi / (static_cast<double>(2 * i) * static_cast<double>(2 * i + 1));
  }
  return v;
}

// Volume of the regular simplex inscribed in B_n: sqrt(n+1) ((n+1)/n)^{n/2} / n!.
inline double regular_simplex_volume(std::size_t n) {
  const double nd = static_cast<double>(n);
  return std::exp(0.5 * std::log(nd + 1.0) + 0.5 * nd * std::log((nd + 1.0) / nd) - log_factorial(n));
}

struct BallConstants {
  double kappa;
  double sigma;
};

inline BallConstants ball_constants(std::size_t n) {
  if (n == 0) throw DimensionMismatch("n must be >= 1");
  return {ball_volume(n), regular_simplex_volume(n)};
}

namespace detail {

inline const std::vector<std::pair<long long, long long>>& nu_list() {
  static const std::vector<std::pair<long long, long long>> v = {
      {1, 1},    {1, 2},     {1, 3},       {1, 8},      {1, 24},      {1, 80},
      {2, 315},  {1, 720},   {1, 2520},    {1, 11340},  {9, 246400},  {3, 394240},
  };
  return v;
}

}  // namespace detail

inline VolumeConstants nu_table(std::size_t n) {
  if (n == 0) throw DimensionMismatch("n must be >= 1");
  VolumeConstants c;
  c.n = n;
  const auto bc = ball_constants(n);
  c.kappa = bc.kappa;
  c.sigma = bc.sigma;
  const double log_nf = log_factorial(n);
  if (n <= detail::nu_list().size()) {
    const auto [p, q] = detail::nu_list()[n - 1];
    c.nu_exact = ratio(p, q);
    c.nu_provenance = "exact-table";
  } else if (n + 1 <= 4096 && constructible(n + 1)) {
    // (n+1)^{(n+1)/2} / (2^n n!) is attained; n+1 is even here.
    const BigInt m(static_cast<long long>(n + 1));
    const BigInt num = boost::multiprecision::pow(m, static_cast<unsigned>((n + 1) / 2));
    c.nu_exact = make_rational(num, (BigInt(1) << n) * big_factorial(n));
    c.nu_provenance = "hadamard-exact";
  }
  if (c.nu_exact) {
    c.nu_lower = c.nu_upper = to_double(*c.nu_exact);
    const Rational h = *c.nu_exact * Rational(big_factorial(n));
    c.h_exact = boost::multiprecision::numerator(h);
    c.h_lower = c.h_upper = to_double(h);
  } else {
    const double up = log_nu_upper_bound(n);
    const double low = log_nu_hadamard_bound(n) + 0.5 * static_cast<double>(n + 1) * std::log(0.75);
    c.nu_upper = std::exp(up);
    c.nu_lower = std::exp(low);
    c.h_upper = std::exp(up + log_nf);
    c.h_lower = std::exp(low + log_nf);
    c.nu_provenance = "bounded";
  }
  return c;
}

// log(1/nu_n) from below: exact when known, else from the tightest upper bound on nu_n.
inline double log_inverse_nu_lower(std::size_t n, bool* exact = nullptr) {
  const VolumeConstants c = nu_table(n);
  if (exact) *exact = c.nu_exact.has_value();
  if (c.nu_exact) return -std::log(to_double(*c.nu_exact));
  return -log_nu_upper_bound(n);
}

enum class NuSource {
  best,           // exact value when known, else the tightest upper bound
  hadamard_bound  // always the Hadamard upper bound
};

struct StrictnessCheck {
  std::size_t n = 0;
  bool holds = false;
  double product = 0.0;  // chi_n((3n-5)/(n-1)) * nu
  std::optional<Rational> exact_product;
  std::string nu_provenance;
};

// Sufficient condition chi_n((3n-5)/(n-1)) * nu_n < 1 for the strict bound
// chain; with an upper bound on nu_n a true result remains a valid certificate.
inline StrictnessCheck sufficient_strictness_check(std::size_t n, NuSource source = NuSource::best) {
  if (n <= 2) throw DimensionMismatch("the condition is stated for n > 2");
  StrictnessCheck r;
  r.n = n;
  const long long nn = static_cast<long long>(n);
  const Rational arg = ratio(3 * nn - 5, nn - 1);
  const double log_chi = std::log(chi(n, to_double(arg)));
  const VolumeConstants c = nu_table(n);
  if (source == NuSource::hadamard_bound) {
    r.product = std::exp(log_chi + log_nu_hadamard_bound(n));
    r.nu_provenance = "hadamard-bound";
    // The bound is attained, hence exact, when n+1 is a Hadamard order.
    if (c.nu_exact && constructible(n + 1)) r.exact_product = chi(n, arg) * *c.nu_exact;
  } else if (c.nu_exact) {
    r.exact_product = chi(n, arg) * *c.nu_exact;
    r.product = to_double(*r.exact_product);
    r.nu_provenance = c.nu_provenance;
  } else {
    r.product = std::exp(log_chi + log_nu_upper_bound(n));
    r.nu_provenance = "bounded";
  }
  r.holds = r.exact_product ? *r.exact_product < 1 : r.product < 1.0;
  return r;
}

}  // namespace simplex_interp
