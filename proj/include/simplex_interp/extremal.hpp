#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "simplex_interp/body.hpp"
#include "simplex_interp/errors.hpp"
#include "simplex_interp/hadamard.hpp"
#include "simplex_interp/parallel.hpp"
#include "simplex_interp/projector.hpp"
#include "simplex_interp/rng.hpp"
#include "simplex_interp/simplex.hpp"

namespace simplex_interp {

enum class SearchMethod { exhaustive, local, catalog };

inline std::string to_string(SearchMethod m) {
  switch (m) {
    case SearchMethod::exhaustive: return "exhaustive";
    case SearchMethod::local: return "local";
    case SearchMethod::catalog: return "catalog";
  }
  return "?";
}

template <Scalar T>
struct SearchResult {
  T best_value{0};
  Simplex<T> best_simplex;
  std::uint64_t evaluations = 0;
  SearchMethod method = SearchMethod::exhaustive;
};

// ---------------------------------------------------------------------------
// Catalog of named simplices.

inline double golden_tau() { return (3.0 - std::sqrt(5.0)) / 2.0; }

// Vertices (0,1,...,1), ..., (1,...,1,0) and the origin.
inline Simplex<Rational> s_star(std::size_t n) {
  if (n < 2) throw DimensionMismatch("S* needs n >= 2");
  std::vector<Point<Rational>> v;
  for (std::size_t j = 0; j < n; ++j) {
    Point<Rational> p(n, Rational(1));
    p[j] = 0;
    v.push_back(std::move(p));
  }
  v.emplace_back(n, Rational(0));
  return Simplex<Rational>(std::move(v));
}

inline Simplex<Rational> s_prime() {
  return Simplex<Rational>({{1, 1, 0}, {1, 0, 1}, {0, 1, 1}, {0, 0, 0}});
}

inline Simplex<Rational> s_double_prime() {
  const Rational h = ratio(1, 2);
  return Simplex<Rational>({{h, 0, 0}, {h, 1, 0}, {0, h, 1}, {1, h, 1}});
}

inline Simplex<double> golden_triangle() {
  const double t = golden_tau();
  return Simplex<double>({{0.0, 0.0}, {1.0, t}, {t, 1.0}});
}

// Regular simplex from a normalized Hadamard matrix, mapped into [0,1]^n.
inline Simplex<Rational> hadamard_unit(std::size_t order) {
  const Simplex<Rational> s = to_regular_simplex(normalize(construct(order)));
  std::vector<Point<Rational>> v = s.vertices();
  for (auto& p : v)
    for (auto& x : p) x = (x + 1) / 2;
  return Simplex<Rational>(std::move(v));
}

struct CatalogName {
  std::string base;
  std::optional<std::size_t> arg;
};

// "Sstar(4)", "regular_ball(3)", "golden2", ...
inline CatalogName parse_catalog_name(const std::string& name) {
  const auto open = name.find('(');
  if (open == std::string::npos) return {name, std::nullopt};
  if (name.back() != ')') throw UnknownName("malformed catalog name '" + name + "'");
  const std::string inner = name.substr(open + 1, name.size() - open - 2);
  if (inner.empty() || inner.find_first_not_of("0123456789") != std::string::npos)
    throw UnknownName("malformed catalog argument in '" + name + "'");
  return {name.substr(0, open), static_cast<std::size_t>(std::stoull(inner))};
}

inline const std::vector<std::string>& catalog_names() {
  static const std::vector<std::string> names = {"golden2",      "Sprime3",          "Sdoubleprime3",
                                                 "Sstar(n)",     "regular_ball(n)",  "hadamard_cube(order)",
                                                 "hadamard_unit(order)"};
  return names;
}

// Exact vertex data; irrational entries (golden2, regular_ball) are not available here.
inline Simplex<Rational> catalog_exact(const std::string& name) {
  const CatalogName c = parse_catalog_name(name);
  auto need = [&]() -> std::size_t {
    if (!c.arg) throw UnknownName("catalog entry '" + c.base + "' needs an argument, e.g. " + c.base + "(4)");
    return *c.arg;
  };
  if (c.base == "Sprime3") return s_prime();
  if (c.base == "Sdoubleprime3") return s_double_prime();
  if (c.base == "Sstar") return s_star(need());
  if (c.base == "hadamard_cube") return to_regular_simplex(normalize(construct(need())));
  if (c.base == "hadamard_unit") return hadamard_unit(need());
  if (c.base == "golden2" || c.base == "regular_ball")
    throw UnknownName("catalog entry '" + c.base + "' has irrational vertices; use float mode");
  throw UnknownName("unknown catalog entry '" + name + "'");
}

inline bool catalog_is_exact(const std::string& name) {
  const std::string base = parse_catalog_name(name).base;
  return base != "golden2" && base != "regular_ball";
}

inline Simplex<double> catalog(const std::string& name) {
  const CatalogName c = parse_catalog_name(name);
  if (c.base == "golden2") return golden_triangle();
  if (c.base == "regular_ball") {
    if (!c.arg) throw UnknownName("regular_ball needs a dimension, e.g. regular_ball(3)");
    return regular_ball_simplex(*c.arg);
  }
  return to_double(catalog_exact(name));
}

// ---------------------------------------------------------------------------
// Maximum-volume 0/1 simplices.

struct MaxVolumeOptions {
  bool exhaustive = true;
  std::uint64_t budget = 200000;  // local search: determinant evaluations
  std::uint64_t seed = 1;
  unsigned threads = 0;
};

namespace detail {

inline long long integer_det(std::vector<std::vector<long long>> m) {
  // Bareiss; exact for small 0/1 matrices.
  const std::size_t n = m.size();
  long long prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && m[p][k] == 0) ++p;
    if (p == n) return 0;
    if (p != k) {
      std::swap(m[p], m[k]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

inline std::vector<long long> bits_to_row(std::uint32_t bits, std::size_t n) {
  std::vector<long long> r(n);
  for (std::size_t i = 0; i < n; ++i) r[i] = (bits >> i) & 1U;
  return r;
}

// Branch and bound over increasing row sequences with a Gram-Schmidt residual bound.
class BinaryDetSearch {
 public:
  BinaryDetSearch(std::size_t n, std::vector<std::uint32_t> candidates)
      : n_(n), cand_(std::move(candidates)), basis_(n, std::vector<double>(n)), chosen_(n) {
    row_bound_ = std::sqrt(static_cast<double>(n));
  }

  // Search with `first` fixed as row 0; returns the best |det| found above `incumbent`.
  long long run(std::uint32_t first, long long incumbent, std::vector<std::uint32_t>& best_rows,
                std::uint64_t& evaluations) {
    best_ = incumbent;
    best_rows_ = &best_rows;
    evals_ = &evaluations;
    if (!push(0, first)) return best_;
    chosen_[0] = first;
    descend(1, 0, norms_[0]);
    return best_;
  }

 private:
  bool push(std::size_t k, std::uint32_t bits) {
    std::vector<double>& v = basis_[k];
    for (std::size_t i = 0; i < n_; ++i) v[i] = (bits >> i) & 1U;
    for (std::size_t a = 0; a < k; ++a) {
      double dot = 0.0;
      for (std::size_t i = 0; i < n_; ++i) dot += v[i] * basis_[a][i];
      const double c = dot / (norms_[a] * norms_[a]);
      for (std::size_t i = 0; i < n_; ++i) v[i] -= c * basis_[a][i];
    }
    double r = 0.0;
    for (double x : v) r += x * x;
    r = std::sqrt(r);
    if (norms_.size() <= k) norms_.resize(k + 1);
    norms_[k] = r;
    return r > 1e-9;
  }

  void descend(std::size_t k, std::size_t start, double product) {
    if (k == n_) {
      ++*evals_;
      const long long d = std::llround(product);
      if (d > best_) {
        std::vector<std::vector<long long>> m;
        for (auto b : chosen_) m.push_back(bits_to_row(b, n_));
        const long long exact = std::llabs(integer_det(m));
        if (exact > best_) {
          best_ = exact;
          *best_rows_ = chosen_;
        }
      }
      return;
    }
    const double rest = std::pow(row_bound_, static_cast<double>(n_ - k));
    if (product * rest < static_cast<double>(best_) + 0.5) return;
    for (std::size_t c = start; c < cand_.size(); ++c) {
      if (!push(k, cand_[c])) continue;
      if (product * norms_[k] * std::pow(row_bound_, static_cast<double>(n_ - k - 1)) <
          static_cast<double>(best_) + 0.5)
        continue;
      chosen_[k] = cand_[c];
      descend(k + 1, c + 1, product * norms_[k]);
    }
  }

  std::size_t n_;
  std::vector<std::uint32_t> cand_;
  std::vector<std::vector<double>> basis_;
  std::vector<double> norms_;
  std::vector<std::uint32_t> chosen_;
  double row_bound_;
  long long best_ = 0;
  std::vector<std::uint32_t>* best_rows_ = nullptr;
  std::uint64_t* evals_ = nullptr;
};

inline Simplex<Rational> simplex_from_rows(const std::vector<std::uint32_t>& rows, std::size_t n) {
  std::vector<Point<Rational>> v;
  v.emplace_back(n, Rational(0));
  for (auto b : rows) {
    Point<Rational> p(n);
    for (std::size_t i = 0; i < n; ++i) p[i] = Rational(static_cast<long long>((b >> i) & 1U));
    v.push_back(std::move(p));
  }
  return Simplex<Rational>(std::move(v));
}

inline int popcount32(std::uint32_t x) { return std::popcount(x); }

}  // namespace detail

// Max |det| of an n x n 0/1 matrix (h_n); the simplex is the origin plus the rows.
// Exhaustive mode permutes columns so that a minimum-weight row reads 1^w 0^(n-w)
// and draws the other rows, in increasing order, from vectors of weight >= w.
inline SearchResult<Rational> max_volume_binary(std::size_t n, const MaxVolumeOptions& opts = {}) {
  if (n == 0) throw DimensionMismatch("n must be >= 1");
  if (n > 12) throw BudgetExceeded("max-volume search supports n <= 12");
  if (opts.exhaustive && n > 6)
    throw BudgetExceeded("exhaustive max-volume search supports n <= 6; use local search");
  const std::uint32_t full = (std::uint32_t{1} << n) - 1;

  if (opts.exhaustive) {
    std::vector<std::size_t> weights(n);
    for (std::size_t w = 1; w <= n; ++w) weights[w - 1] = w;
    struct Part {
      long long det = 0;
      std::vector<std::uint32_t> rows;
      std::uint64_t evals = 0;
    };
    std::vector<Part> parts(n);
    // Weight w at index w-1; each part is independent so results do not depend on threads.
    parallel_for(n, opts.threads, [&](std::size_t idx) {
      const std::size_t w = weights[idx];
      std::vector<std::uint32_t> cand;
      for (std::uint32_t b = 1; b <= full; ++b)
        if (static_cast<std::size_t>(detail::popcount32(b)) >= w) cand.push_back(b);
      const std::uint32_t first = (std::uint32_t{1} << w) - 1;
      std::erase(cand, first);
      detail::BinaryDetSearch search(n, std::move(cand));
      parts[idx].det = search.run(first, 0, parts[idx].rows, parts[idx].evals);
    });
    long long best = 0;
    std::vector<std::uint32_t> rows;
    std::uint64_t evals = 0;
    for (const auto& p : parts) {
      evals += p.evals;
      if (p.det > best) {
        best = p.det;
        rows = p.rows;
      }
    }
    Simplex<Rational> s = detail::simplex_from_rows(rows, n);
    return {volume(s), std::move(s), evals, SearchMethod::exhaustive};
  }

  // Local search: random 0/1 rows, single-bit flips accepted when |det| grows.
  CounterRng rng(opts.seed, n);
  long long best = 0;
  std::vector<std::uint32_t> best_rows(n, 1);
  std::uint64_t evals = 0;
  auto det_of = [&](const std::vector<std::uint32_t>& rows) {
    std::vector<std::vector<long long>> m;
    for (auto b : rows) m.push_back(detail::bits_to_row(b, n));
    ++evals;
    return std::llabs(detail::integer_det(m));
  };
  while (evals < opts.budget) {
    std::vector<std::uint32_t> rows(n);
    for (auto& r : rows) r = static_cast<std::uint32_t>(rng.below(full) + 1);
    long long cur = det_of(rows);
    bool improved = true;
    while (improved && evals < opts.budget) {
      improved = false;
      for (std::size_t r = 0; r < n && evals < opts.budget; ++r)
        for (std::size_t bit = 0; bit < n && evals < opts.budget; ++bit) {
          rows[r] ^= std::uint32_t{1} << bit;
          const long long d = rows[r] == 0 ? 0 : det_of(rows);
          if (d > cur) {
            cur = d;
            improved = true;
          } else {
            rows[r] ^= std::uint32_t{1} << bit;
          }
        }
    }
    if (cur > best) {
      best = cur;
      best_rows = rows;
    }
  }
  if (best == 0) throw BudgetExceeded("local search found no nondegenerate simplex within budget");
  Simplex<Rational> s = detail::simplex_from_rows(best_rows, n);
  return {volume(s), std::move(s), evals, SearchMethod::local};
}

// ---------------------------------------------------------------------------
// Projector-norm minimization on [0,1]^n.

struct MinNormOptions {
  std::uint64_t budget = 4000;  // norm evaluations across all restarts
  std::uint64_t seed = 1;
  std::size_t restarts = 8;
  unsigned threads = 0;
};

namespace detail {

inline double cube_norm_or_inf(const std::vector<Point<double>>& v) {
  try {
    const Simplex<double> s(v);
    ScanOptions o;
    o.want_facets = false;
    o.threads = 1;
    return scan_vertices(s, Body<double>::unit_cube(s.dim()), o).norm;
  } catch (const DegenerateSimplex&) {
    return std::numeric_limits<double>::infinity();
  }
}

inline bool lex_less(const std::vector<Point<double>>& a, const std::vector<Point<double>>& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

// Coordinate-wise golden-section refinement, each coordinate kept in [0,1].
inline double refine(std::vector<Point<double>>& v, double value, std::uint64_t& evals, std::uint64_t budget,
                     double width) {
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  for (std::size_t j = 0; j < v.size(); ++j)
    for (std::size_t i = 0; i < v[j].size(); ++i) {
      if (evals >= budget) return value;
      const double x0 = v[j][i];
      double lo = std::max(0.0, x0 - width), hi = std::min(1.0, x0 + width);
      auto f = [&](double x) {
        v[j][i] = x;
        ++evals;
        return cube_norm_or_inf(v);
      };
      double a = hi - g * (hi - lo), b = lo + g * (hi - lo);
      double fa = f(a), fb = f(b);
      for (int it = 0; it < 12 && evals < budget; ++it) {
        if (fa <= fb) {
          hi = b;
          b = a;
          fb = fa;
          a = hi - g * (hi - lo);
          fa = f(a);
        } else {
          lo = a;
          a = b;
          fa = fb;
          b = lo + g * (hi - lo);
          fb = f(b);
        }
      }
      const double cand = fa <= fb ? a : b;
      const double fc = std::min(fa, fb);
      if (fc < value) {
        v[j][i] = cand;
        value = fc;
      } else {
        v[j][i] = x0;
      }
    }
  return value;
}

}  // namespace detail

// Catalog seeds for [0,1]^n, best first after evaluation.
inline std::vector<Simplex<double>> min_norm_seeds(std::size_t n) {
  std::vector<Simplex<double>> seeds;
  if (n == 1) seeds.push_back(Simplex<double>(std::vector<Point<double>>{{0.0}, {1.0}}));
  if (n == 2) seeds.push_back(golden_triangle());
  if (n >= 2) seeds.push_back(to_double(s_star(n)));
  if (n == 3) seeds.push_back(to_double(s_double_prime()));
  if (constructible(n + 1)) seeds.push_back(to_double(hadamard_unit(n + 1)));
  if (n <= 6) seeds.push_back(to_double(max_volume_binary(n).best_simplex));
  return seeds;
}

// Upper bounds only: restarts perturb the best seed and refine coordinate-wise.
inline SearchResult<double> minimize_norm_cube(std::size_t n, const MinNormOptions& opts = {}) {
  if (n == 0 || n > 10) throw DimensionMismatch("min-norm search supports 1 <= n <= 10");
  std::uint64_t evals = 0;
  std::vector<Point<double>> best_v;
  double best = std::numeric_limits<double>::infinity();
  for (const auto& s : min_norm_seeds(n)) {
    const double v = detail::cube_norm_or_inf(s.vertices());
    ++evals;
    if (v < best || (v == best && detail::lex_less(s.vertices(), best_v))) {
      best = v;
      best_v = s.vertices();
    }
  }
  const std::size_t restarts = std::max<std::size_t>(1, opts.restarts);
  const std::uint64_t per = opts.budget > evals ? (opts.budget - evals) / restarts : 0;
  struct Run {
    double value;
    std::vector<Point<double>> v;
    std::uint64_t evals = 0;
  };
  std::vector<Run> runs(restarts);
  parallel_for(restarts, opts.threads, [&](std::size_t r) {
    CounterRng rng(opts.seed, r);
    std::vector<Point<double>> v = best_v;
    const double jitter = r == 0 ? 0.0 : 0.05;
    for (auto& p : v)
      for (auto& x : p) x = std::clamp(x + jitter * (2.0 * rng.uniform() - 1.0), 0.0, 1.0);
    std::uint64_t e = 1;
    double val = detail::cube_norm_or_inf(v);
    for (double width = 0.25; width > 1e-6 && e < per; width *= 0.5) val = detail::refine(v, val, e, per, width);
    runs[r] = {val, std::move(v), e};
  });
  for (const auto& r : runs) {
    evals += r.evals;
    if (r.value < best || (r.value == best && detail::lex_less(r.v, best_v))) {
      best = r.value;
      best_v = r.v;
    }
  }
  return {best, Simplex<double>(best_v), evals, SearchMethod::local};
}

}  // namespace simplex_interp
