#pragma once

#include <algorithm>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "simplex_interp/config.hpp"
#include "simplex_interp/errors.hpp"
#include "simplex_interp/io.hpp"
#include "simplex_interp/reports.hpp"

namespace simplex_interp::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kDomainError = 1;
inline constexpr int kUsageError = 2;

struct Output {
  Json json;
  std::optional<std::string> csv;   // command-specific CSV layout
  std::optional<std::string> text;  // command-specific plain text
};

namespace detail {

inline std::string leaf_text(const Json& j) {
  if (j.is_string()) return j.get<std::string>();
  return j.dump();
}

inline bool is_field(const Json& j) {
  return j.is_object() && j.size() == 3 && j.contains("value") && j.contains("decimal") && j.contains("provenance");
}

// Leaves of a report as (path, text); numeric fields collapse to "value [provenance]".
inline void flatten(const Json& j, const std::string& path, std::vector<std::pair<std::string, std::string>>& out) {
  if (is_field(j)) {
    out.emplace_back(path, leaf_text(j["value"]) + " [" + leaf_text(j["provenance"]) + "]");
  } else if (j.is_object()) {
    for (const auto& [k, v] : j.items()) flatten(v, path.empty() ? k : path + "." + k, out);
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], path + "[" + std::to_string(i) + "]", out);
  } else {
    out.emplace_back(path, leaf_text(j));
  }
}

inline std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
  return out + "\"";
}

}  // namespace detail

inline std::string render(const Output& o, OutputFormat f) {
  if (f == OutputFormat::json) return o.json.dump(2) + "\n";
  if (f == OutputFormat::csv && o.csv) return *o.csv;
  if (f == OutputFormat::table && o.text) return *o.text;
  std::ostringstream s;
  // Row reports get one CSV line per row; columns are the union of row leaves.
  if (f == OutputFormat::csv && o.json.is_object() && o.json.contains("rows") && o.json["rows"].is_array() &&
      !o.json["rows"].empty() && o.json["rows"][0].is_object()) {
    std::vector<std::string> columns;
    std::vector<std::map<std::string, std::string>> lines;
    for (const auto& row : o.json["rows"]) {
      std::vector<std::pair<std::string, std::string>> cells;
      detail::flatten(row, "", cells);
      auto& line = lines.emplace_back();
      for (auto& [k, v] : cells) {
        if (std::find(columns.begin(), columns.end(), k) == columns.end()) columns.push_back(k);
        line[k] = std::move(v);
      }
    }
    for (std::size_t i = 0; i < columns.size(); ++i) s << (i ? "," : "") << detail::csv_escape(columns[i]);
    s << '\n';
    for (const auto& line : lines) {
      for (std::size_t i = 0; i < columns.size(); ++i) {
        const auto it = line.find(columns[i]);
        s << (i ? "," : "") << (it == line.end() ? "" : detail::csv_escape(it->second));
      }
      s << '\n';
    }
    return s.str();
  }
  std::vector<std::pair<std::string, std::string>> leaves;
  detail::flatten(o.json, "", leaves);
  if (f == OutputFormat::csv) {
    for (std::size_t i = 0; i < leaves.size(); ++i) s << (i ? "," : "") << detail::csv_escape(leaves[i].first);
    s << '\n';
    for (std::size_t i = 0; i < leaves.size(); ++i) s << (i ? "," : "") << detail::csv_escape(leaves[i].second);
    s << '\n';
  } else {
    std::size_t width = 0;
    for (const auto& [k, v] : leaves) width = std::max(width, k.size());
    for (const auto& [k, v] : leaves) s << k << std::string(width - k.size() + 2, ' ') << v << '\n';
  }
  return s.str();
}

// Everything the parser can fill in.
struct Args {
  std::string config_path, arithmetic, format, out_path;
  std::optional<std::uint64_t> seed;

  std::string simplex_file;
  reports::BodySpec body;
  bool oracle = false, histogram = false, chain = false;

  std::string n_range = "1";
  std::size_t n = 0;
  std::string matrices_file;

  std::size_t order = 0;
  std::string matrix_file;
  std::string construction_file;  // hadamard check / batch-stats positional
  bool text = false, unit = false;

  std::string t = "0", s = "1", gamma = "2";
  std::vector<std::uint64_t> mc;

  std::optional<std::size_t> witness;
  bool ball_witness = false;

  bool exhaustive = false, local = false;
  std::uint64_t budget = 0;
  std::size_t restarts = 8;

  std::string name;
  std::vector<std::string> nodes;
  std::string symmetric;

  std::optional<int> section;
  std::string table;
};

template <class F>
Json with_arithmetic(Arithmetic a, F&& f) {
  if (a == Arithmetic::rational) return f(Rational{});
  return f(double{});
}

inline std::vector<HadamardMatrix> load_optional_matrices(const std::string& path) {
  if (path.empty()) return {};
  return load_matrix_file(path);
}

// Builds the command tree, parses argv and dispatches. Returns the exit code.
inline int run(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Linear interpolation on simplices: absorption indices, projector norms and their bounds.",
               "simplex-interp"};
  app.require_subcommand(1);
  app.fallthrough();
  Args a;
  app.add_option("--config", a.config_path, "key = value configuration file");
  app.add_option("--arithmetic", a.arithmetic, "rational | float");
  app.add_option("--seed", a.seed, "64-bit seed for randomized steps");
  app.add_option("--out", a.out_path, "write the report to this file");
  app.add_option("--format", a.format, "json | csv | table");

  auto add_body = [&](CLI::App* c) {
    c->add_option("--body", a.body.kind, "cube | symcube | ball | polytope")->capture_default_str();
    c->add_option("--simplex", a.simplex_file, "simplex JSON file")->required();
    c->add_option("--center", a.body.center, "ball center, comma separated");
    c->add_option("--radius", a.body.radius, "ball radius")->capture_default_str();
    c->add_option("--polytope", a.body.polytope_file, "polytope vertex JSON file");
  };

  auto* absorb = app.add_subcommand("absorb", "absorption index xi(K;S) and translate index alpha(K;S)");
  add_body(absorb);
  absorb->add_flag("--oracle", a.oracle, "also run the bisection/LP oracles");

  auto* norm = app.add_subcommand("norm", "interpolation projector norm on K");
  add_body(norm);
  norm->add_flag("--mu-histogram", a.histogram, "count norm-attaining vertices by negative coordinates");
  norm->add_flag("--chain", a.chain, "check the xi/norm inequality chain");

  auto* theta = app.add_subcommand("theta", "minimal projector norms");
  theta->require_subcommand(1);
  auto* theta_ball = theta->add_subcommand("ball", "theta_n(B_n), exact");
  theta_ball->add_option("--n", a.n_range, "dimension or range lo..hi")->required();
  auto* theta_cube = theta->add_subcommand("cube-bounds", "bounds on theta_n(Q_n) and xi_n(Q_n)");
  theta_cube->add_option("--n", a.n_range, "dimension or range lo..hi")->required();
  theta_cube->add_option("--matrices", a.matrices_file, "Hadamard matrices of order n+1");

  auto* hadamard = app.add_subcommand("hadamard", "Hadamard matrices and their regular simplices");
  hadamard->require_subcommand(1);
  auto* h_gen = hadamard->add_subcommand("gen", "build a Hadamard matrix");
  h_gen->add_option("--order", a.order)->required();
  h_gen->add_flag("--text", a.text, "print +/- rows instead of JSON");
  auto* h_check = hadamard->add_subcommand("check", "validate a matrix file");
  h_check->add_option("file", a.construction_file)->required();
  auto* h_simplex = hadamard->add_subcommand("simplex", "regular simplex from a normalized matrix");
  h_simplex->add_option("--order", a.order, "built-in construction of this order");
  h_simplex->add_option("--matrix", a.matrix_file, "first matrix of this file instead");
  h_simplex->add_flag("--unit", a.unit, "map [-1,1]^n to [0,1]^n");
  auto* h_batch = hadamard->add_subcommand("batch-stats", "norm and mu-vertex histogram per matrix");
  h_batch->add_option("file", a.construction_file)->required();

  auto* legendre = app.add_subcommand("legendre", "standardized Legendre polynomials chi_n");
  legendre->require_subcommand(1);
  auto* l_eval = legendre->add_subcommand("eval", "chi_n(t)");
  l_eval->add_option("--n", a.n)->required();
  l_eval->add_option("--t", a.t)->required();
  auto* l_inv = legendre->add_subcommand("inv", "chi_n^{-1}(s) for s >= 1");
  l_inv->add_option("--n", a.n)->required();
  l_inv->add_option("--s", a.s)->required();

  auto* measure = app.add_subcommand("measure", "volume of E_{n,gamma}, exact and Monte Carlo");
  measure->add_option("--n", a.n)->required();
  measure->add_option("--gamma", a.gamma)->capture_default_str();
  measure->add_option("--mc", a.mc, "SAMPLES SEED")->expected(2);

  auto* constants = app.add_subcommand("constants", "nu_n, h_n, ball volumes and lower bounds");
  constants->add_option("--n", a.n)->required();

  auto* ellipsoid = app.add_subcommand("ellipsoid", "minimal ellipsoid and its witness points");
  ellipsoid->add_option("--simplex", a.simplex_file)->required();
  ellipsoid->add_option("--witness", a.witness, "face size m of the witness points");
  ellipsoid->add_flag("--ball-witness", a.ball_witness, "norm lower bound from the witness points in B_n");

  auto* search = app.add_subcommand("search", "extremal simplex searches");
  search->require_subcommand(1);
  auto* s_vol = search->add_subcommand("max-volume", "maximum-volume 0/1 simplex");
  s_vol->add_option("--n", a.n)->required();
  s_vol->add_flag("--exhaustive", a.exhaustive, "exhaustive branch and bound (n <= 6)");
  s_vol->add_flag("--local", a.local, "bit-flip local search (n <= 12)");
  s_vol->add_option("--budget", a.budget, "local search evaluations");
  auto* s_norm = search->add_subcommand("min-norm", "projector-norm minimization on [0,1]^n");
  s_norm->add_option("--n", a.n)->required();
  s_norm->add_option("--budget", a.budget, "norm evaluations");
  s_norm->add_option("--restarts", a.restarts)->capture_default_str();

  auto* catalog = app.add_subcommand("catalog", "named simplices");
  catalog->add_option("name", a.name, "e.g. Sstar(4), golden2, hadamard_cube(8); 'list' lists all")->required();

  auto* quad = app.add_subcommand("quad1d", "quadratic interpolation on [-1,1]");
  auto* nodes_opt = quad->add_option("--nodes", a.nodes, "three nodes r s t")->expected(3);
  auto* sym_opt = quad->add_option("--symmetric", a.symmetric, "nodes -r, 0, r");
  nodes_opt->excludes(sym_opt);

  auto* reproduce = app.add_subcommand("reproduce", "named numeric reproductions");
  auto* sec_opt = reproduce->add_option("--section", a.section, "2 | 4 | 5 | 7 | 9 | 10");
  auto* tab_opt = reproduce->add_option("--table", a.table, "mu15 | mu23 | bounds");
  sec_opt->excludes(tab_opt);
  reproduce->add_option("--n", a.n_range, "dimension or range lo..hi");
  reproduce->add_option("--matrices", a.matrices_file, "Hadamard matrix file");

  std::vector<std::string> args(argv.rbegin(), argv.rend());
  try {
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kOk;
    }
    err << "usage error: " << e.what() << "\n\n" << app.help();
    return kUsageError;
  }
  if (quad->parsed() && a.nodes.empty() && a.symmetric.empty()) {
    err << "usage error: quad1d needs --nodes r s t or --symmetric r\n";
    return kUsageError;
  }
  if (reproduce->parsed() && !a.section && a.table.empty()) {
    err << "usage error: reproduce needs --section or --table\n";
    return kUsageError;
  }

  // Option values and config files are resolved before any work, so their errors are usage errors.
  Config cfg;
  try {
    if (!a.config_path.empty()) cfg = load_config(a.config_path);
    if (!a.arithmetic.empty()) cfg.arithmetic = parse_arithmetic(a.arithmetic);
    if (!a.format.empty()) cfg.format = parse_format(a.format);
    if (a.seed) cfg.seed = *a.seed;
  } catch (const ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsageError;
  }

  try {
    Output o;
    if (absorb->parsed() || norm->parsed()) {
      const bool is_absorb = absorb->parsed();
      o.json = with_arithmetic(cfg.arithmetic, [&]<class T>(T) {
        const Simplex<T> s = load_simplex<T>(a.simplex_file);
        return is_absorb ? reports::absorb(s, a.body, a.oracle, cfg)
                         : reports::norm(s, a.body, a.histogram, a.chain, cfg);
      });
    } else if (theta_ball->parsed()) {
      o.json = reports::theta_ball_rows(reports::parse_range(a.n_range));
    } else if (theta_cube->parsed()) {
      o.json = reports::bound_table(reports::parse_range(a.n_range), cfg, load_optional_matrices(a.matrices_file));
      o.csv = reports::bound_table_csv(o.json);
    } else if (h_gen->parsed()) {
      const HadamardMatrix h = construct(a.order);
      o.json = reports::hadamard_rows_json(h);
      if (a.text) {
        std::ostringstream t;
        write_matrix_text(t, h);
        o.text = t.str();
        cfg.format = OutputFormat::table;
      }
    } else if (h_check->parsed()) {
      const auto ms = load_matrix_file(a.construction_file);
      Json list = Json::array();
      for (std::size_t k = 0; k < ms.size(); ++k)
        list.push_back(Json{{"index", k + 1}, {"order", ms[k].order()}, {"hadamard", true}});
      o.json = Json{{"file", a.construction_file}, {"count", ms.size()}, {"matrices", std::move(list)}};
    } else if (h_simplex->parsed()) {
      if ((a.order == 0) == a.matrix_file.empty()) throw ParseError("hadamard simplex needs exactly one of --order, --matrix");
      const HadamardMatrix h = a.order ? construct(a.order) : load_matrix_file(a.matrix_file).at(0);
      Simplex<Rational> s = to_regular_simplex(normalize(h));
      if (a.unit) {
        std::vector<Point<Rational>> v = s.vertices();
        for (auto& p : v)
          for (auto& x : p) x = (x + 1) / 2;
        s = Simplex<Rational>(std::move(v));
      }
      o.json = simplex_json(s);
    } else if (h_batch->parsed()) {
      const auto rows = mu_statistics_batch(load_matrix_file(a.construction_file), reports::scan_options(cfg));
      o.json = Json{{"rows", reports::mu_rows_json(rows)}};
      o.csv = reports::mu_rows_csv(rows);
    } else if (l_eval->parsed()) {
      o.json = with_arithmetic(cfg.arithmetic, [&]<class T>(T) { return reports::legendre_eval<T>(a.n, a.t); });
    } else if (l_inv->parsed()) {
      o.json = reports::legendre_inv(a.n, to_double(parse_rational(a.s)));
    } else if (measure->parsed()) {
      std::optional<reports::MonteCarloRequest> mc;
      if (!a.mc.empty()) mc = reports::MonteCarloRequest{a.mc.at(0), a.mc.at(1)};
      o.json = reports::measure(a.n, a.gamma, mc, cfg);
    } else if (constants->parsed()) {
      o.json = reports::constants(a.n);
    } else if (ellipsoid->parsed()) {
      o.json = with_arithmetic(cfg.arithmetic, [&]<class T>(T) {
        return reports::ellipsoid(load_simplex<T>(a.simplex_file), a.witness, a.ball_witness);
      });
    } else if (s_vol->parsed()) {
      if (a.exhaustive && a.local) throw ParseError("--exhaustive and --local are exclusive");
      MaxVolumeOptions m;
      m.exhaustive = a.exhaustive || (!a.local && a.n <= 6);
      if (a.budget) m.budget = a.budget;
      m.seed = cfg.seed;
      m.threads = cfg.threads;
      o.json = reports::search_json(max_volume_binary(a.n, m), "exact");
    } else if (s_norm->parsed()) {
      MinNormOptions m;
      if (a.budget) m.budget = a.budget;
      m.seed = cfg.seed;
      m.restarts = a.restarts;
      m.threads = cfg.threads;
      o.json = reports::search_json(minimize_norm_cube(a.n, m), "search-upper");
    } else if (catalog->parsed()) {
      if (a.name == "list")
        o.json = Json{{"names", catalog_names()}};
      else
        o.json = reports::catalog_entry(a.name, cfg.arithmetic);
    } else if (quad->parsed()) {
      if (!a.symmetric.empty()) {
        o.json = reports::quad1d_symmetric(a.symmetric, cfg.arithmetic);
      } else {
        o.json = with_arithmetic(cfg.arithmetic, [&]<class T>(T) {
          std::array<T, 3> xs;
          for (std::size_t i = 0; i < 3; ++i) {
            const Rational r = parse_rational(a.nodes[i]);
            if constexpr (is_exact_v<T>)
              xs[i] = r;
            else
              xs[i] = to_double(r);
          }
          return reports::quad1d(xs);
        });
      }
    } else if (reproduce->parsed()) {
      if (a.section) {
        switch (*a.section) {
          case 2: o.json = reports::reproduce_absorption(cfg); break;
          case 4: o.json = reports::reproduce_cube_norms(reports::parse_range(a.n_range == "1" ? "1..8" : a.n_range), cfg); break;
          case 5: o.json = reports::reproduce_measure(reports::parse_range(a.n_range == "1" ? "1..3" : a.n_range), cfg); break;
          case 7: {
            o.json = reports::theta_ball_rows(reports::parse_range(a.n_range == "1" ? "1..4" : a.n_range));
            o.json["target"] = "ball-norms";
            break;
          }
          case 9: o.json = reports::reproduce_ball_witness(reports::parse_range(a.n_range == "1" ? "2..6" : a.n_range)); break;
          case 10: o.json = reports::reproduce_quad1d(); break;
          default: err << "usage error: unknown section " << *a.section << " (2, 4, 5, 7, 9, 10)\n"; return kUsageError;
        }
      } else if (a.table == "mu15" || a.table == "mu23") {
        const std::size_t order = a.table == "mu15" ? 16 : 24;
        std::vector<HadamardMatrix> ms = load_optional_matrices(a.matrices_file);
        if (ms.empty()) {
          err << "note: no --matrices file; using the built-in order-" << order << " matrix only\n";
          ms.push_back(construct(order));
        }
        if (ms.front().order() != order)
          throw DimensionMismatch("table " + a.table + " needs matrices of order " + std::to_string(order));
        const auto rows = mu_statistics_batch(ms, reports::scan_options(cfg));
        o.json = reports::reproduce_mu_table(rows);
        o.json["target"] = a.table;
        o.csv = reports::mu_rows_csv(rows);
      } else if (a.table == "bounds") {
        o.json = reports::bound_table(reports::parse_range(a.n_range == "1" ? "1..10" : a.n_range), cfg,
                                      load_optional_matrices(a.matrices_file));
        o.csv = reports::bound_table_csv(o.json);
      } else {
        err << "usage error: unknown table '" << a.table << "' (mu15, mu23, bounds)\n";
        return kUsageError;
      }
    }

    const std::string text = render(o, cfg.format);
    if (a.out_path.empty()) {
      out << text;
    } else {
      std::ofstream f(a.out_path);
      if (!f) throw ParseError("cannot write " + a.out_path);
      f << text;
    }
    return kOk;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kDomainError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kDomainError;
  }
}

inline int run(int argc, char** argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args, out, err);
}

}  // namespace simplex_interp::cli
