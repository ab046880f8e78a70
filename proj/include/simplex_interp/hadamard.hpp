#pragma once

#include <cstddef>
#include <cstdint>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "simplex_interp/body.hpp"
#include "simplex_interp/errors.hpp"
#include "simplex_interp/matrix.hpp"
#include "simplex_interp/parallel.hpp"
#include "simplex_interp/scalar.hpp"
#include "simplex_interp/simplex.hpp"
#include "simplex_interp/vertex_scan.hpp"

namespace simplex_interp {

using SignMatrix = Matrix<int>;

// M M^T = m I, checked in integer arithmetic.
inline bool is_hadamard(const SignMatrix& m) {
  const std::size_t k = m.rows();
  if (m.cols() != k) return false;
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j)
      if (m(i, j) != 1 && m(i, j) != -1) return false;
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = a; b < k; ++b) {
      long long dot = 0;
      for (std::size_t j = 0; j < k; ++j) dot += m(a, j) * m(b, j);
      if (dot != (a == b ? static_cast<long long>(k) : 0)) return false;
    }
  return true;
}

// A validated square +-1 matrix with pairwise orthogonal rows.
class HadamardMatrix {
 public:
  explicit HadamardMatrix(SignMatrix entries) : m_(std::move(entries)) {
    if (!is_hadamard(m_)) throw NotHadamard("matrix of order " + std::to_string(m_.rows()) + " is not Hadamard");
  }

  std::size_t order() const { return m_.rows(); }
  const SignMatrix& entries() const { return m_; }
  int operator()(std::size_t i, std::size_t j) const { return m_(i, j); }

  // Last column all +1.
  bool normalized() const {
    for (std::size_t i = 0; i < order(); ++i)
      if (m_(i, order() - 1) != 1) return false;
    return true;
  }

  friend bool operator==(const HadamardMatrix&, const HadamardMatrix&) = default;

 private:
  SignMatrix m_;
};

inline constexpr std::size_t default_order_cap = 4096;

inline HadamardMatrix sylvester(unsigned k, std::size_t cap = default_order_cap) {
  if (k >= 63 || (std::size_t{1} << k) > cap)
    throw OrderTooLarge("Sylvester order 2^" + std::to_string(k) + " exceeds cap " + std::to_string(cap));
  SignMatrix h(1, 1, 1);
  for (unsigned step = 0; step < k; ++step) {
    const std::size_t m = h.rows();
    SignMatrix next(2 * m, 2 * m);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j) {
        next(i, j) = next(i, j + m) = next(i + m, j) = h(i, j);
        next(i + m, j + m) = -h(i, j);
      }
    h = std::move(next);
  }
  return HadamardMatrix(std::move(h));
}

inline bool is_prime(std::uint64_t q) {
  if (q < 2) return false;
  for (std::uint64_t d = 2; d * d <= q; ++d)
    if (q % d == 0) return false;
  return true;
}

namespace detail {

// Quadratic character of x mod prime q.
inline std::vector<int> quadratic_character(std::uint64_t q) {
  std::vector<int> chi(q, -1);
  chi[0] = 0;
  for (std::uint64_t x = 1; x < q; ++x) chi[(x * x) % q] = 1;
  return chi;
}

// Conference-style core [[0, e^T], [s*e, Q]] with Q_ij = chi(j - i).
inline SignMatrix paley_core(std::uint64_t q, int column_sign) {
  const auto chi = quadratic_character(q);
  const std::size_t m = q + 1;
  SignMatrix c(m, m, 0);
  for (std::size_t j = 1; j < m; ++j) {
    c(0, j) = 1;
    c(j, 0) = column_sign;
  }
  for (std::size_t i = 0; i < q; ++i)
    for (std::size_t j = 0; j < q; ++j) c(i + 1, j + 1) = chi[(j + q - i) % q];
  return c;
}

}  // namespace detail

// Paley I: q prime, q = 3 mod 4, order q + 1.
inline HadamardMatrix paley(std::uint64_t q) {
  if (!is_prime(q) || q % 4 != 3)
    throw UnsupportedOrder("Paley I needs a prime q = 3 mod 4, got " + std::to_string(q));
  SignMatrix h = detail::paley_core(q, -1);  // skew
  for (std::size_t i = 0; i <= q; ++i) h(i, i) = 1;
  return HadamardMatrix(std::move(h));
}

// Paley II: q prime, q = 1 mod 4, order 2(q + 1); blocks [[C+I, C-I], [C-I, -C-I]].
inline HadamardMatrix paley2(std::uint64_t q) {
  if (!is_prime(q) || q % 4 != 1)
    throw UnsupportedOrder("Paley II needs a prime q = 1 mod 4, got " + std::to_string(q));
  const SignMatrix c = detail::paley_core(q, 1);  // symmetric
  const std::size_t m = q + 1;
  SignMatrix h(2 * m, 2 * m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      const int id = i == j ? 1 : 0;
      h(i, j) = c(i, j) + id;
      h(i, j + m) = h(i + m, j) = c(i, j) - id;
      h(i + m, j + m) = -c(i, j) - id;
    }
  return HadamardMatrix(std::move(h));
}

inline bool is_power_of_two(std::size_t m) { return m != 0 && (m & (m - 1)) == 0; }

// Whether construct(order) succeeds, without building anything.
inline bool constructible(std::size_t order) {
  if (order == 0) return false;
  if (is_power_of_two(order)) return true;
  if (order % 4 != 0) return false;
  if (is_prime(order - 1) && (order - 1) % 4 == 3) return true;
  if (order % 2 == 0 && order / 2 >= 2 && is_prime(order / 2 - 1) && (order / 2 - 1) % 4 == 1) return true;
  return constructible(order / 2);
}

// Sylvester, Paley I, Paley II, then H_2 (x) construct(order / 2).
inline HadamardMatrix construct(std::size_t order, std::size_t cap = default_order_cap) {
  if (order > cap) throw OrderTooLarge("order " + std::to_string(order) + " exceeds cap " + std::to_string(cap));
  if (!constructible(order))
    throw UnsupportedOrder("no built-in construction for order " + std::to_string(order) +
                           "; load it from a file instead");
  if (is_power_of_two(order)) {
    unsigned k = 0;
    while ((std::size_t{1} << k) < order) ++k;
    return sylvester(k, cap);
  }
  if (is_prime(order - 1) && (order - 1) % 4 == 3) return paley(order - 1);
  if (is_prime(order / 2 - 1) && (order / 2 - 1) % 4 == 1) return paley2(order / 2 - 1);
  const HadamardMatrix half = construct(order / 2, cap);
  const std::size_t m = half.order();
  SignMatrix h(2 * m, 2 * m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      h(i, j) = h(i, j + m) = h(i + m, j) = half(i, j);
      h(i + m, j + m) = -half(i, j);
    }
  return HadamardMatrix(std::move(h));
}

// Negates every row whose last entry is -1.
inline HadamardMatrix normalize(const HadamardMatrix& h) {
  SignMatrix m = h.entries();
  const std::size_t k = m.rows();
  for (std::size_t i = 0; i < k; ++i)
    if (m(i, k - 1) == -1)
      for (std::size_t j = 0; j < k; ++j) m(i, j) = -m(i, j);
  return HadamardMatrix(std::move(m));
}

// The normalized order-8 matrix whose rows, minus the last entry, give the
// minimal projector on [-1,1]^7.
inline HadamardMatrix h8() {
  constexpr int rows[8][8] = {
      {1, 1, 1, 1, 1, 1, 1, 1},      {-1, 1, -1, 1, -1, 1, -1, 1}, {-1, -1, 1, 1, -1, -1, 1, 1},
      {1, -1, -1, 1, 1, -1, -1, 1},  {-1, -1, -1, -1, 1, 1, 1, 1}, {1, -1, 1, -1, -1, 1, -1, 1},
      {1, 1, -1, -1, -1, -1, 1, 1},  {-1, 1, 1, -1, 1, -1, -1, 1},
  };
  SignMatrix m(8, 8);
  for (std::size_t i = 0; i < 8; ++i)
    for (std::size_t j = 0; j < 8; ++j) m(i, j) = rows[i][j];
  return HadamardMatrix(std::move(m));
}

// Rows minus the last entry: a regular simplex with vertices at vertices of [-1,1]^n.
inline Simplex<Rational> to_regular_simplex(const HadamardMatrix& h) {
  if (!h.normalized()) throw NotNormalized("last column must be all +1; call normalize first");
  const std::size_t m = h.order();
  if (m < 2) throw DimensionMismatch("order 1 gives no simplex");
  std::vector<Point<Rational>> v(m, Point<Rational>(m - 1));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j + 1 < m; ++j) v[i][j] = Rational(h(i, j));
  return Simplex<Rational>(std::move(v));
}

namespace detail {

inline std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

// One row as +/- characters, or whitespace-separated 1 / -1 tokens.
inline std::vector<int> parse_sign_row(const std::string& line) {
  std::vector<int> row;
  if (line.find_first_not_of("+-") == std::string::npos) {
    for (char c : line) row.push_back(c == '+' ? 1 : -1);
    return row;
  }
  std::istringstream in(line);
  std::string tok;
  while (in >> tok) {
    if (tok == "1" || tok == "+1" || tok == "+")
      row.push_back(1);
    else if (tok == "-1" || tok == "-")
      row.push_back(-1);
    else
      throw ParseError("unexpected token '" + tok + "'");
  }
  return row;
}

}  // namespace detail

// Blank-line separated blocks; lines starting with '#' are ignored.
inline std::vector<HadamardMatrix> parse_matrix_text(std::istream& in, const std::string& source = "<input>") {
  std::vector<HadamardMatrix> out;
  std::vector<std::vector<int>> block;
  std::size_t block_start = 0, line_no = 0;
  auto flush = [&] {
    if (block.empty()) return;
    const std::size_t idx = out.size() + 1;
    const std::size_t m = block.size();
    SignMatrix sm(m, m);
    for (std::size_t i = 0; i < m; ++i) {
      if (block[i].size() != m)
        throw ParseError(source + ": block " + std::to_string(idx) + " (line " + std::to_string(block_start + i) +
                         "): row has " + std::to_string(block[i].size()) + " entries, expected " +
                         std::to_string(m));
      for (std::size_t j = 0; j < m; ++j) sm(i, j) = block[i][j];
    }
    if (!is_hadamard(sm))
      throw NotHadamard(source + ": block " + std::to_string(idx) + " (line " + std::to_string(block_start) +
                        ") is not a Hadamard matrix");
    out.emplace_back(std::move(sm));
    block.clear();
  };
  std::string raw;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string line = detail::trim(raw);
    if (!line.empty() && line.front() == '#') continue;
    if (line.empty()) {
      flush();
      continue;
    }
    if (block.empty()) block_start = line_no;
    try {
      block.push_back(detail::parse_sign_row(line));
    } catch (const ParseError& e) {
      throw ParseError(source + ": block " + std::to_string(out.size() + 1) + " (line " + std::to_string(line_no) +
                       "): " + e.what());
    }
  }
  flush();
  return out;
}

inline std::vector<HadamardMatrix> load_matrix_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  return parse_matrix_text(in, path);
}

inline void write_matrix_text(std::ostream& out, const HadamardMatrix& h) {
  for (std::size_t i = 0; i < h.order(); ++i) {
    for (std::size_t j = 0; j < h.order(); ++j) out << (h(i, j) > 0 ? '+' : '-');
    out << '\n';
  }
}

struct MuStatRow {
  std::size_t index = 0;  // 1-based, input order
  std::size_t order = 0;
  Rational norm;
  std::map<int, std::uint64_t> mu_histogram;
};

// Norm on [-1,1]^n and the mu-vertex histogram for each matrix's simplex.
inline std::vector<MuStatRow> mu_statistics_batch(const std::vector<HadamardMatrix>& matrices,
                                                   const ScanOptions& scan = {}) {
  if (matrices.empty()) return {};
  const std::size_t order = matrices.front().order();
  for (const auto& h : matrices)
    if (h.order() != order) throw DimensionMismatch("batch matrices must share one order");
  std::vector<MuStatRow> rows(matrices.size());
  ScanOptions opts = scan;
  opts.want_norm = true;
  opts.want_histogram = true;
  opts.want_facets = false;
  for (std::size_t k = 0; k < matrices.size(); ++k) {
    const Simplex<Rational> s = to_regular_simplex(normalize(matrices[k]));
    auto r = scan_vertices(s, Body<Rational>::symmetric_cube(s.dim()), opts);
    rows[k] = {k + 1, order, r.norm, r.mu_histogram};
  }
  return rows;
}

// index,order,norm_num,norm_den,mu1,...,mu_n
inline void write_mu_csv(std::ostream& out, const std::vector<MuStatRow>& rows) {
  if (rows.empty()) {
    out << "index,order,norm_num,norm_den\n";
    return;
  }
  const std::size_t n = rows.front().order - 1;
  out << "index,order,norm_num,norm_den";
  for (std::size_t mu = 1; mu <= n; ++mu) out << ",mu" << mu;
  out << '\n';
  for (const auto& r : rows) {
    out << r.index << ',' << r.order << ',' << boost::multiprecision::numerator(r.norm) << ','
        << boost::multiprecision::denominator(r.norm);
    for (std::size_t mu = 1; mu <= n; ++mu) {
      auto it = r.mu_histogram.find(static_cast<int>(mu));
      out << ',' << (it == r.mu_histogram.end() ? 0 : it->second);
    }
    out << '\n';
  }
}

}  // namespace simplex_interp
