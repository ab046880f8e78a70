#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "simplex_interp/body.hpp"
#include "simplex_interp/errors.hpp"
#include "simplex_interp/parallel.hpp"
#include "simplex_interp/simplex.hpp"

namespace simplex_interp {

struct ScanOptions {
  std::size_t cap_n = 24;
  unsigned threads = 0;
  double tie_rel = 1e-9;       // float-mode tolerance for norm ties
  double negative_tol = 1e-12;  // float-mode threshold for a negative coordinate
  bool want_norm = true;
  bool want_facets = true;
  bool want_histogram = false;
};

// Maxima over ver(K) of sum_j |lambda_j| and of each -lambda_j.
template <Scalar T>
struct VertexScan {
  T norm{0};
  Point<T> norm_argmax;
  std::vector<T> argmax_lambda;
  std::map<int, std::uint64_t> mu_histogram;  // mu >= 1 only
  std::vector<T> max_neg_lambda;
  std::vector<Point<T>> facet_argmax;
  std::uint64_t vertex_count = 0;
};

namespace detail {

inline std::int64_t abs_acc(std::int64_t x) { return x < 0 ? -x : x; }
inline double abs_acc(double x) { return std::abs(x); }
inline Rational abs_acc(const Rational& x) { return abs_value(x); }

template <class A>
struct ChunkResult {
  A norm{};
  std::uint64_t norm_index = 0;
  bool has_norm = false;
  std::map<int, std::uint64_t> hist;
  std::vector<A> min_lambda;
  std::vector<std::uint64_t> min_index;
  bool has_facets = false;
};

// Streams all 2^n cube vertices in Gray-code order within fixed chunks.
// lambda(vertex) = base + sum over set bits i of step[i].
template <class A>
class GrayScanner {
 public:
  GrayScanner(std::size_t n, std::vector<A> base, std::vector<std::vector<A>> step, const ScanOptions& opts,
              bool exact)
      : n_(n), base_(std::move(base)), step_(std::move(step)), opts_(opts), exact_(exact) {}

  ChunkResult<A> run() const {
    const std::size_t chunk_bits = std::min<std::size_t>(n_, 12);
    const std::uint64_t chunk = std::uint64_t{1} << chunk_bits;
    const std::uint64_t chunks = (std::uint64_t{1} << n_) / chunk;
    std::vector<ChunkResult<A>> parts(chunks);
    parallel_for(chunks, opts_.threads, [&](std::size_t c) { parts[c] = scan_chunk(c * chunk, chunk, nullptr); });
    ChunkResult<A> total = merge(parts);
    if (opts_.want_histogram && !exact_ && total.has_norm) {
      const A threshold = total.norm - A(opts_.tie_rel) * abs_acc(total.norm);
      std::vector<ChunkResult<A>> counts(chunks);
      parallel_for(chunks, opts_.threads, [&](std::size_t c) { counts[c] = scan_chunk(c * chunk, chunk, &threshold); });
      total.hist.clear();
      for (const auto& part : counts)
        for (const auto& [mu, cnt] : part.hist) total.hist[mu] += cnt;
    }
    return total;
  }

 private:
  int count_negative(std::span<const A> acc) const {
    int mu = 0;
    for (const auto& v : acc) {
      if constexpr (std::is_floating_point_v<A>) {
        if (v < -opts_.negative_tol) ++mu;
      } else {
        if (v < A(0)) ++mu;
      }
    }
    return mu;
  }

  // With `threshold`, only counts the histogram of vertices at or above it.
  ChunkResult<A> scan_chunk(std::uint64_t g0, std::uint64_t len, const A* threshold) const {
    const std::size_t m = base_.size();
    std::vector<A> acc = base_;
    std::uint64_t v = g0 ^ (g0 >> 1);
    for (std::size_t i = 0; i < n_; ++i)
      if ((v >> i) & 1U)
        for (std::size_t j = 0; j < m; ++j) acc[j] += step_[i][j];

    ChunkResult<A> r;
    const bool facets = opts_.want_facets && threshold == nullptr;
    const bool norm = opts_.want_norm || threshold != nullptr;
    if (facets) {
      r.min_lambda.assign(m, A{});
      r.min_index.assign(m, 0);
    }
    for (std::uint64_t g = g0; g < g0 + len; ++g) {
      if (g != g0) {
        const int b = std::countr_zero(g);
        v ^= std::uint64_t{1} << b;
        const auto& d = step_[b];
        if ((v >> b) & 1U)
          for (std::size_t j = 0; j < m; ++j) acc[j] += d[j];
        else
          for (std::size_t j = 0; j < m; ++j) acc[j] -= d[j];
      }
      if (norm) {
        A s{};
        for (std::size_t j = 0; j < m; ++j) s += abs_acc(acc[j]);
        if (threshold) {
          if (s >= *threshold) {
            const int mu = count_negative(acc);
            if (mu > 0) ++r.hist[mu];
          }
        } else if (!r.has_norm || s > r.norm) {
          r.norm = s;
          r.norm_index = v;
          r.has_norm = true;
          if (exact_ && opts_.want_histogram) {
            r.hist.clear();
            if (int mu = count_negative(acc); mu > 0) ++r.hist[mu];
          }
        } else if (s == r.norm) {
          r.norm_index = std::min(r.norm_index, v);
          if (exact_ && opts_.want_histogram)
            if (int mu = count_negative(acc); mu > 0) ++r.hist[mu];
        }
      }
      if (facets) {
        if (!r.has_facets) {
          r.min_lambda = acc;
          std::fill(r.min_index.begin(), r.min_index.end(), v);
          r.has_facets = true;
        } else {
          for (std::size_t j = 0; j < m; ++j) {
            if (acc[j] < r.min_lambda[j] || (acc[j] == r.min_lambda[j] && v < r.min_index[j])) {
              r.min_lambda[j] = acc[j];
              r.min_index[j] = v;
            }
          }
        }
      }
    }
    return r;
  }

  static ChunkResult<A> merge(std::vector<ChunkResult<A>>& parts) {
    ChunkResult<A> total;
    for (auto& p : parts) {
      if (p.has_norm) {
        if (!total.has_norm || p.norm > total.norm) {
          total.norm = p.norm;
          total.norm_index = p.norm_index;
          total.hist = std::move(p.hist);
          total.has_norm = true;
        } else if (p.norm == total.norm) {
          total.norm_index = std::min(total.norm_index, p.norm_index);
          for (const auto& [mu, cnt] : p.hist) total.hist[mu] += cnt;
        }
      }
      if (p.has_facets) {
        if (!total.has_facets) {
          total.min_lambda = p.min_lambda;
          total.min_index = p.min_index;
          total.has_facets = true;
        } else {
          for (std::size_t j = 0; j < p.min_lambda.size(); ++j)
            if (p.min_lambda[j] < total.min_lambda[j] ||
                (p.min_lambda[j] == total.min_lambda[j] && p.min_index[j] < total.min_index[j])) {
              total.min_lambda[j] = p.min_lambda[j];
              total.min_index[j] = p.min_index[j];
            }
        }
      }
    }
    return total;
  }

  std::size_t n_;
  std::vector<A> base_;
  std::vector<std::vector<A>> step_;
  ScanOptions opts_;
  bool exact_;
};

template <Scalar T>
Point<T> cube_vertex(std::uint64_t mask, std::size_t n, bool symmetric) {
  Point<T> p(n);
  for (std::size_t i = 0; i < n; ++i) {
    const bool high = (mask >> i) & 1U;
    p[i] = high ? T(1) : (symmetric ? T(-1) : T(0));
  }
  return p;
}

template <Scalar T, class A>
VertexScan<T> finish_cube_scan(const Simplex<T>& s, const ChunkResult<A>& r, bool symmetric, const T& scale,
                               const ScanOptions& opts) {
  const std::size_t n = s.dim();
  VertexScan<T> out;
  out.vertex_count = std::uint64_t{1} << n;
  auto to_t = [&](const A& a) -> T {
    if constexpr (std::same_as<A, std::int64_t>)
      return T(a) / scale;
    else
      return T(a);
  };
  if (r.has_norm) {
    out.norm = to_t(r.norm);
    out.norm_argmax = cube_vertex<T>(r.norm_index, n, symmetric);
    out.argmax_lambda = barycentric(s, out.norm_argmax);
    out.mu_histogram = r.hist;
  }
  if (r.has_facets) {
    for (std::size_t j = 0; j <= n; ++j) {
      out.max_neg_lambda.push_back(-to_t(r.min_lambda[j]));
      out.facet_argmax.push_back(cube_vertex<T>(r.min_index[j], n, symmetric));
    }
  }
  (void)opts;
  return out;
}

template <Scalar T>
VertexScan<T> scan_cube(const Simplex<T>& s, bool symmetric, const ScanOptions& opts) {
  const std::size_t n = s.dim();
  if (n > opts.cap_n || n > 62)
    throw EnumerationTooLarge("cube enumeration of 2^" + std::to_string(n) + " vertices exceeds cap n <= " +
                              std::to_string(opts.cap_n));
  const std::size_t m = n + 1;
  std::vector<T> base(m);
  std::vector<std::vector<T>> step(n, std::vector<T>(m));
  for (std::size_t j = 0; j < m; ++j) {
    base[j] = s.coeff(n, j);
    for (std::size_t i = 0; i < n; ++i) {
      if (symmetric) {
        base[j] -= s.coeff(i, j);
        step[i][j] = T(2) * s.coeff(i, j);
      } else {
        step[i][j] = s.coeff(i, j);
      }
    }
  }

  if constexpr (is_exact_v<T>) {
    // Scale to integers; the streaming sums then run in 64-bit arithmetic.
    BigInt q = 1;
    auto fold = [&](const Rational& x) {
      const BigInt d = boost::multiprecision::denominator(x);
      q = q / boost::multiprecision::gcd(q, d) * d;
    };
    for (const auto& b : base) fold(b);
    for (const auto& row : step)
      for (const auto& x : row) fold(x);
    BigInt bound = 0;
    for (std::size_t j = 0; j < m; ++j) {
      bound += BigInt(boost::multiprecision::numerator(abs_value(base[j]) * q));
      for (std::size_t i = 0; i < n; ++i) bound += BigInt(boost::multiprecision::numerator(abs_value(step[i][j]) * q));
    }
    if (bound < (BigInt(1) << 62)) {
      auto to_int = [&](const Rational& x) {
        return static_cast<std::int64_t>(boost::multiprecision::numerator(x * q));
      };
      std::vector<std::int64_t> ibase(m);
      std::vector<std::vector<std::int64_t>> istep(n, std::vector<std::int64_t>(m));
      for (std::size_t j = 0; j < m; ++j) {
        ibase[j] = to_int(base[j]);
        for (std::size_t i = 0; i < n; ++i) istep[i][j] = to_int(step[i][j]);
      }
      GrayScanner<std::int64_t> scanner(n, std::move(ibase), std::move(istep), opts, true);
      return finish_cube_scan<T>(s, scanner.run(), symmetric, Rational(q), opts);
    }
    GrayScanner<Rational> scanner(n, std::move(base), std::move(step), opts, true);
    return finish_cube_scan<T>(s, scanner.run(), symmetric, Rational(1), opts);
  } else {
    GrayScanner<double> scanner(n, std::move(base), std::move(step), opts, false);
    return finish_cube_scan<T>(s, scanner.run(), symmetric, 1.0, opts);
  }
}

template <Scalar T>
VertexScan<T> scan_polytope(const Simplex<T>& s, const std::vector<Point<T>>& verts, const ScanOptions& opts) {
  const std::size_t m = s.dim() + 1;
  VertexScan<T> out;
  out.vertex_count = verts.size();
  std::vector<std::vector<T>> lambdas;
  std::vector<T> sums;
  for (const auto& v : verts) {
    lambdas.push_back(barycentric(s, v));
    T sum(0);
    for (const auto& x : lambdas.back()) sum += abs_value(x);
    sums.push_back(sum);
  }
  std::size_t best = 0;
  for (std::size_t k = 1; k < verts.size(); ++k)
    if (sums[k] > sums[best]) best = k;
  out.norm = sums[best];
  out.norm_argmax = verts[best];
  out.argmax_lambda = lambdas[best];
  if (opts.want_histogram) {
    for (std::size_t k = 0; k < verts.size(); ++k) {
      bool tie;
      if constexpr (is_exact_v<T>)
        tie = sums[k] == out.norm;
      else
        tie = sums[k] >= out.norm - opts.tie_rel * std::abs(out.norm);
      if (!tie) continue;
      int mu = 0;
      for (const auto& x : lambdas[k]) {
        if constexpr (is_exact_v<T>)
          mu += x < 0;
        else
          mu += x < -opts.negative_tol;
      }
      if (mu > 0) ++out.mu_histogram[mu];
    }
  }
  out.max_neg_lambda.assign(m, T(0));
  out.facet_argmax.assign(m, verts.front());
  for (std::size_t j = 0; j < m; ++j) {
    std::size_t arg = 0;
    for (std::size_t k = 1; k < verts.size(); ++k)
      if (lambdas[k][j] < lambdas[arg][j]) arg = k;
    out.max_neg_lambda[j] = -lambdas[arg][j];
    out.facet_argmax[j] = verts[arg];
  }
  return out;
}

}  // namespace detail

// Vertex-enumerable bodies only: cubes by Gray-code streaming, polytopes by list.
template <Scalar T>
VertexScan<T> scan_vertices(const Simplex<T>& s, const Body<T>& k, const ScanOptions& opts = {}) {
  if (k.n != s.dim())
    throw DimensionMismatch("body dimension " + std::to_string(k.n) + " vs simplex " + std::to_string(s.dim()));
  switch (k.kind) {
    case BodyKind::unit_cube: return detail::scan_cube(s, false, opts);
    case BodyKind::symmetric_cube: return detail::scan_cube(s, true, opts);
    case BodyKind::polytope: return detail::scan_polytope(s, k.vertices, opts);
    case BodyKind::ball: break;
  }
  throw DimensionMismatch("a ball has no vertex list");
}

}  // namespace simplex_interp
