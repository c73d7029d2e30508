#include "vm/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "vm/arith_tables.hpp"
#include "vm/error_terms.hpp"
#include "vm/errors.hpp"
#include "vm/exponents.hpp"
#include "vm/moments.hpp"
#include "vm/series.hpp"
#include "vm/sqrt_relations.hpp"
#include "vm/verify.hpp"

#ifndef VM_VERSION
#define VM_VERSION "0.1.0"
#endif

namespace vm {

using Json = nlohmann::ordered_json;

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

template <class T>
T parse_number(const std::string& key, const std::string& text) {
  std::istringstream in(text);
  double v = 0;
  in >> v;
  std::string rest;
  if (!in || (in >> rest)) throw ArgumentError("bad value for " + key + ": '" + text + "'");
  if constexpr (std::is_integral_v<T>) {
    if (v < 0 || v != std::floor(v)) throw ArgumentError(key + " must be a non-negative integer");
  }
  return static_cast<T>(v);
}

Json config_json(const RunConfig& c) {
  Json j;
  j["table_limit"] = c.table_limit;
  j["tau_limit"] = c.tau_limit;
  j["table_cache"] = c.cache_path;
  j["y"] = c.y;
  j["chunk_size"] = c.chunk_size;
  j["quad_order"] = c.quadrature_order;
  j["format"] = c.format;
  j["threads"] = c.threads;
  return j;
}

Json optional_number(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }

void flatten(const Json& j, const std::string& prefix, std::vector<std::pair<std::string, std::string>>& out) {
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it) {
      flatten(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), out);
    }
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], prefix + "." + std::to_string(i), out);
  } else if (j.is_string()) {
    out.emplace_back(prefix, j.get<std::string>());
  } else {
    out.emplace_back(prefix, j.dump());
  }
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
  return q + "\"";
}

// Scalars as field,value lines; a result.rows array becomes a table.
void write_csv(const Json& report, std::ostream& out) {
  Json meta = report;
  Json rows;
  if (meta.contains("result") && meta["result"].contains("rows")) {
    rows = meta["result"]["rows"];
    meta["result"].erase("rows");
  }
  std::vector<std::pair<std::string, std::string>> flat;
  flatten(meta, "", flat);
  out << "field,value\n";
  for (const auto& [k, v] : flat) out << csv_field(k) << ',' << csv_field(v) << '\n';
  if (rows.is_array() && !rows.empty()) {
    out << '\n';
    bool first = true;
    for (auto it = rows[0].begin(); it != rows[0].end(); ++it) {
      out << (first ? "" : ",") << csv_field(it.key());
      first = false;
    }
    out << '\n';
    for (const auto& row : rows) {
      first = true;
      for (auto it = row.begin(); it != row.end(); ++it) {
        out << (first ? "" : ",") << csv_field(it.value().is_string() ? it.value().get<std::string>() : it.value().dump());
        first = false;
      }
      out << '\n';
    }
  }
}

std::vector<std::uint64_t> parse_list(const std::string& text) {
  std::vector<std::uint64_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_number<std::uint64_t>("--N", trim(item)));
  if (out.empty()) throw ArgumentError("empty list");
  return out;
}

struct Session {
  RunConfig config;
  std::optional<ArithTable> table;

  const ArithTable& tables(std::uint64_t need_limit, std::uint64_t need_tau = 1) {
    const std::uint64_t limit = config.table_limit ? config.table_limit : std::max<std::uint64_t>(need_limit, 1);
    std::uint64_t tau = config.tau_limit ? config.tau_limit : std::max<std::uint64_t>(need_tau, 1);
    tau = std::min(tau, limit);
    table.emplace(load_or_build(config.cache_path, limit, tau));
    return *table;
  }
};

std::uint64_t ceil_u(double v) { return static_cast<std::uint64_t>(std::ceil(std::max(v, 1.0))); }

Json moment_json(const MomentReport& r) {
  Json j;
  j["kind"] = r.kind;
  j["k"] = r.k;
  j["lower"] = r.lower;
  j["T"] = r.upper;
  j["y"] = r.y;
  j["empirical"] = r.empirical;
  j["predicted"] = r.predicted;
  j["ratio"] = optional_number(r.ratio);
  j["chunk_count"] = r.chunk_count;
  j["quadrature_order"] = r.quadrature_order;
  j["gated"] = r.gated;
  j["tail_corrected"] = r.tail_corrected;
  j["note"] = r.note;
  return j;
}

Json relation_row(const Relation& rel) {
  Json row;
  const auto v = rel.values();
  for (std::size_t i = 0; i < v.size(); ++i) row["n" + std::to_string(i + 1)] = v[i];
  row["kernels"] = rel.kernel_decomposition();
  row["parity"] = parity_check(rel) ? "even" : "odd";
  return row;
}

}  // namespace

std::map<std::string, std::string> read_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ArgumentError("cannot read config file " + path.string());
  std::map<std::string, std::string> out;
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ArgumentError(path.string() + ":" + std::to_string(number) + ": expected key = value");
    }
    out[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return out;
}

void apply_config(RunConfig& c, const std::map<std::string, std::string>& entries) {
  for (const auto& [key, value] : entries) {
    if (key == "table_limit") c.table_limit = parse_number<std::uint64_t>(key, value);
    else if (key == "tau_limit") c.tau_limit = parse_number<std::uint64_t>(key, value);
    else if (key == "table_cache") c.cache_path = value;
    else if (key == "y") c.y = parse_number<double>(key, value);
    else if (key == "chunk_size") c.chunk_size = parse_number<std::uint64_t>(key, value);
    else if (key == "quad_order") c.quadrature_order = parse_number<int>(key, value);
    else if (key == "format") c.format = value;
    else if (key == "threads") c.threads = parse_number<int>(key, value);
    else throw ArgumentError("unknown config key '" + key + "'");
  }
}

std::string version_string() { return VM_VERSION; }

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Divisor-problem moments, square-root series and their checks", "vmom"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_file;
  std::map<std::string, std::string> flags;
  auto flag = [&](const std::string& name, const std::string& key, const std::string& help) {
    app.add_option_function<std::string>(name, [&flags, key](const std::string& v) { flags[key] = v; }, help);
  };
  app.add_option("--config", config_file, "key = value config file");
  flag("--table-limit", "table_limit", "sieve limit (0 = size to the request)");
  flag("--tau-limit", "tau_limit", "tau table limit (0 = size to the request)");
  flag("--table-cache", "table_cache", "binary table cache path (default $VM_TABLE_CACHE)");
  flag("--y", "y", "truncation y");
  flag("--chunk-size", "chunk_size", "quadrature cells per chunk");
  flag("--quad-order", "quad_order", "Gauss-Legendre order");
  flag("--format", "format", "json or csv");
  flag("--threads", "threads", "worker threads (0 = runtime default)");

  Session session;
  Json result;
  std::string command;
  int status = 0;
  std::optional<double> used_y;

  auto* sieve = app.add_subcommand("sieve", "build (and cache) the arithmetic tables");
  std::string show;
  sieve->add_option("--n", show, "comma-separated n to print");

  auto* et = app.add_subcommand("error-term", "Delta, P, A or Delta* at x");
  std::string et_kind;
  double et_x = 0;
  std::optional<double> et_y;
  et->add_option("--kind", et_kind, "delta|p|a|delta-star")->required();
  et->add_option("--x", et_x, "argument")->required();
  et->add_option("--trunc", et_y, "truncation of the Voronoi sum (defaults to --y when given)");

  auto* rel = app.add_subcommand("relations", "square-root relations");
  rel->require_subcommand(1);
  auto* en = rel->add_subcommand("enumerate", "balanced k-tuples with n_j <= y");
  int en_k = 0, en_l = 0;
  std::uint64_t en_y = 0;
  bool en_brute = false;
  en->add_option("--k", en_k)->required();
  en->add_option("--l", en_l)->required();
  en->add_option("--n-max", en_y, "bound on n_j (defaults to --y)");
  en->add_flag("--brute", en_brute, "test every tuple instead");
  auto* gp = rel->add_subcommand("gap", "smallest nonzero signed square-root sum");
  int gp_k = 0;
  std::string gp_pattern;
  std::uint64_t gp_n = 0;
  gp->add_option("--k", gp_k)->required();
  gp->add_option("--pattern", gp_pattern)->required();
  gp->add_option("--N", gp_n)->required();
  auto* ct = rel->add_subcommand("count", "solutions of |sum| < delta with N_j < n_j <= 2 N_j");
  std::string ct_n, ct_pattern;
  double ct_delta = 0;
  ct->add_option("--N", ct_n, "comma-separated N_j")->required();
  ct->add_option("--pattern", ct_pattern)->required();
  ct->add_option("--delta", ct_delta)->required();

  auto* se = app.add_subcommand("series", "truncated s_{k;l}(f; y)");
  std::string se_kind = "d";
  int se_k = 0, se_l = 0;
  se->add_option("--kind", se_kind, "d|r|a|dstar");
  se->add_option("--k", se_k)->required();
  se->add_option("--l", se_l)->required();

  auto* bkc = app.add_subcommand("bk", "B_k(f; y)");
  std::string bk_kind = "d";
  int bk_k = 0;
  bool bk_breakdown = false, bk_tail = false;
  bkc->add_option("--kind", bk_kind, "d|r|a|dstar");
  bkc->add_option("--k", bk_k)->required();
  bkc->add_flag("--breakdown", bk_breakdown);
  bkc->add_flag("--tail-corrected", bk_tail, "add the fitted series tails");

  auto* co = app.add_subcommand("coeff", "main-term coefficient");
  int co_theorem = 1, co_k = 0;
  std::optional<int> co_kappa;
  bool co_tail = false;
  co->add_option("--theorem", co_theorem)->required();
  co->add_option("--k", co_k)->required();
  co->add_option("--kappa", co_kappa);
  co->add_flag("--tail-corrected", co_tail, "add the fitted series tails");

  auto* ex = app.add_subcommand("exponents", "exponent bookkeeping");
  int ex_k = 0;
  std::string ex_a0;
  ex->add_option("--k", ex_k)->required();
  ex->add_option("--a0", ex_a0)->required();

  auto* mo = app.add_subcommand("moment", "int_1^T E(x)^k dx vs the main term");
  std::string mo_kind;
  int mo_k = 0;
  double mo_t = 0;
  std::optional<std::uint64_t> mo_chunks;
  bool mo_raw = false;
  mo->add_option("--kind", mo_kind, "delta|p|a|delta-star")->required();
  mo->add_option("--k", mo_k)->required();
  mo->add_option("--T", mo_t)->required();
  mo->add_option("--chunks", mo_chunks, "number of chunks (overrides --chunk-size)");
  mo->add_flag("--raw-coefficient", mo_raw, "use the truncated series without the fitted tails");

  auto* m1 = app.add_subcommand("moment-r1", "int_T^{2T} R1(x, y)^h dx vs the diagonal prediction");
  std::string m1_kind = "d";
  int m1_h = 0;
  double m1_t = 0;
  m1->set_help_flag("--help", "print help");
  m1->add_option("--kind", m1_kind, "d|r|a|dstar");
  m1->add_option("--h", m1_h)->required();
  m1->add_option("--T", m1_t)->required();

  auto* ve = app.add_subcommand("verify", "run a check battery");
  std::string ve_suite;
  ve->add_option("--suite", ve_suite)->required();

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return 2;
  }

  const auto started = std::chrono::steady_clock::now();
  auto& cfg = session.config;
  try {
    if (const char* env = std::getenv("VM_TABLE_CACHE")) cfg.cache_path = env;
    if (!config_file.empty()) apply_config(cfg, read_config_file(config_file));
    apply_config(cfg, flags);
    if (cfg.format != "json" && cfg.format != "csv") throw ArgumentError("format must be json or csv");
    if (!(cfg.y > 0)) throw ArgumentError("y must be positive");
    set_worker_threads(cfg.threads);
    QuadratureSpec quad{cfg.quadrature_order, cfg.chunk_size};
    const bool y_given = flags.count("y") || (!config_file.empty() && read_config_file(config_file).count("y"));

    if (sieve->parsed()) {
      command = "sieve";
      const auto& t = session.tables(cfg.table_limit ? cfg.table_limit : 1000000,
                                     cfg.tau_limit ? cfg.tau_limit : 10000);
      result["limit"] = t.limit();
      result["tau_limit"] = t.tau_limit();
      result["divisor_sum"] = t.divisor_sum(t.limit());
      result["two_squares_sum"] = t.two_squares_sum(t.limit());
      result["tau_sum"] = to_string(t.tau_sum(t.tau_limit()));
      if (!cfg.cache_path.empty()) result["cache"] = cfg.cache_path;
      if (!show.empty()) {
        Json rows = Json::array();
        for (auto n : parse_list(show)) {
          Json row;
          row["n"] = n;
          row["d"] = t.d(n);
          row["r"] = t.r(n);
          row["mu"] = t.mu(n);
          row["kernel"] = t.kernel(n);
          row["tau"] = n <= t.tau_limit() ? Json(to_string(t.tau(n))) : Json(nullptr);
          rows.push_back(row);
        }
        result["rows"] = rows;
      }
    } else if (et->parsed()) {
      command = "error-term";
      const auto kind = parse_error_term_kind(et_kind);
      if (!(et_x > 0)) throw ArgumentError("x must be positive");
      std::optional<double> y = et_y;
      if (!y && flags.count("y")) y = cfg.y;
      const double scale = kind == ErrorTermKind::DeltaStar ? 4 : 1;
      std::uint64_t need = ceil_u(scale * et_x);
      if (y) need = std::max(need, static_cast<std::uint64_t>(std::floor(*y)));
      const std::uint64_t tau_need = kind == ErrorTermKind::A ? need : 1;
      const auto& t = session.tables(need, tau_need);
      result["kind"] = to_string(kind);
      result["x"] = et_x;
      result["value"] = error_term(t, kind, et_x);
      result["step_part"] = step_part(t, kind, et_x);
      result["main_term"] = main_term(kind, et_x);
      if (y) {
        used_y = *y;
        const double r1 = voronoi_truncated(t, matching_coefficient_kind(kind), et_x, *y);
        result["truncated"] = r1;
        result["difference"] = error_term(t, kind, et_x) - r1;
      }
    } else if (en->parsed()) {
      command = "relations enumerate";
      const std::uint64_t y = en_y ? en_y : static_cast<std::uint64_t>(cfg.y);
      used_y = static_cast<double>(y);
      auto rels = en_brute ? brute_force_enumerate(en_k, en_l, y) : enumerate_relations(en_k, en_l, y);
      std::sort(rels.begin(), rels.end(), [](const auto& a, const auto& b) { return a.values() < b.values(); });
      result["k"] = en_k;
      result["l"] = en_l;
      result["n_max"] = y;
      result["method"] = en_brute ? "brute" : "kernel";
      result["count"] = rels.size();
      Json rows = Json::array();
      for (const auto& r : rels) rows.push_back(relation_row(r));
      result["rows"] = rows;
    } else if (gp->parsed()) {
      command = "relations gap";
      const auto pattern = SignPattern::parse(gp_pattern);
      if (pattern.k() != gp_k) throw ArgumentError("pattern needs k-1 = " + std::to_string(gp_k - 1) + " signs");
      const auto g = min_gap(gp_k, pattern, gp_n);
      result["k"] = gp_k;
      result["pattern"] = pattern.str();
      result["N"] = gp_n;
      result["found"] = g.found;
      result["alpha_min"] = static_cast<double>(g.alpha_min);
      result["lower"] = static_cast<double>(g.lower);
      result["witness"] = g.witness;
      result["scaled"] = static_cast<double>(g.alpha_min) *
                         std::pow(static_cast<double>(gp_n), std::ldexp(1.0, gp_k - 2) - 0.5);
    } else if (ct->parsed()) {
      command = "relations count";
      const auto N = parse_list(ct_n);
      const auto pattern = SignPattern::parse(ct_pattern);
      const auto c = count_inequality_solutions(N, pattern, ct_delta);
      result["N"] = N;
      result["pattern"] = pattern.str();
      result["delta"] = ct_delta;
      result["count"] = c;
      result["bound_shape"] = inequality_bound(N, ct_delta);
    } else if (se->parsed() || bkc->parsed() || co->parsed()) {
      const double y = cfg.y;
      used_y = y;
      std::string kind_text = se->parsed() ? se_kind : bk_kind;
      if (co->parsed()) kind_text = co_theorem == 3 ? "r" : co_theorem == 4 ? "a" : "d";
      const auto kind = parse_coefficient_kind(kind_text);
      const auto n = static_cast<std::uint64_t>(std::floor(y));
      const bool cusp = kind.weight() == Weight::CuspNormalized;
      const auto& t = session.tables(n, cusp ? n : 1);
      SeriesEngine engine(t);
      if (se->parsed()) {
        command = "series";
        const auto s = engine.series(kind, se_k, se_l, y);
        result["kind"] = kind.tag();
        result["k"] = s.k;
        result["l"] = s.l;
        result["y"] = s.y;
        result["value"] = s.value;
        result["tail_estimate"] = s.tail_estimate;
        result["extrapolated"] = s.value + s.tail_estimate;
      } else if (bkc->parsed()) {
        command = "bk";
        const auto b = engine.bk(kind, bk_k, y, bk_tail);
        result["kind"] = kind.tag();
        result["k"] = b.k;
        result["y"] = b.y;
        result["tail_corrected"] = b.tail_corrected;
        result["value"] = b.value;
        if (bk_breakdown) {
          Json rows = Json::array();
          for (const auto& term : b.breakdown) {
            rows.push_back({{"l", term.l}, {"binomial", term.binomial}, {"s", term.s_value},
                            {"cosine", term.cosine}, {"contribution", term.contribution}});
          }
          result["breakdown"] = rows;
        }
      } else {
        command = "coeff";
        std::optional<int> kappa = co_kappa;
        if (co_theorem == 4 && !kappa) kappa = 12;
        const auto c = engine.main_term_coefficient(co_theorem, co_k, kappa, y, co_tail);
        result["theorem"] = c.theorem;
        result["k"] = c.k;
        result["kappa"] = c.kappa ? Json(*c.kappa) : Json(nullptr);
        result["y"] = c.y;
        result["tail_corrected"] = c.tail_corrected;
        result["formula"] = c.formula;
        result["value"] = c.value;
        result["t_exponent"] = c.t_exponent;
        if (c.theorem == 5) result["note"] = "no empirical check: needs zeta on the critical line";
      }
    } else if (ex->parsed()) {
      command = "exponents";
      const auto b = exponent_book(ex_k, parse_rational(ex_a0));
      result["k"] = b.k;
      result["a0"] = to_string(b.a0);
      result["k0"] = b.k0;
      result["b_k"] = to_string(b.b_k);
      result["b_k0"] = to_string(b.b_k0);
      result["sigma"] = to_string(b.sigma);
      result["delta1"] = to_string(b.delta1);
      result["delta2"] = to_string(b.delta2);
      result["decimal"] = {{"sigma", to_double(b.sigma)},
                           {"delta1", to_double(b.delta1)},
                           {"delta2", to_double(b.delta2)}};
    } else if (mo->parsed()) {
      command = "moment";
      const auto kind = parse_error_term_kind(mo_kind);
      if (!(mo_t >= 1)) throw ArgumentError("T must be >= 1");
      const auto coeff = matching_coefficient_kind(kind);
      const auto yn = static_cast<std::uint64_t>(std::floor(cfg.y));
      std::uint64_t need = yn, tau_need = 1;
      switch (kind) {
        case ErrorTermKind::Delta:
        case ErrorTermKind::P:
          need = std::max(need, ceil_u(mo_t));
          break;
        case ErrorTermKind::DeltaStar:
          need = std::max(need, ceil_u(4 * mo_t));
          break;
        case ErrorTermKind::A:
          tau_need = ceil_u(mo_t);
          need = std::max(need, tau_need);
          break;
      }
      (void)coeff;
      const auto& t = session.tables(need, tau_need);
      if (mo_chunks) {
        if (*mo_chunks == 0) throw ArgumentError("--chunks must be positive");
        const int q = step_denominator(kind);
        const auto cells = static_cast<std::uint64_t>(std::ceil(q * mo_t) - q);
        quad.chunk_cells = std::max<std::uint64_t>(1, (cells + *mo_chunks - 1) / *mo_chunks);
      }
      MomentOptions opt;
      opt.quadrature = quad;
      opt.coefficient_y = cfg.y;
      opt.tail_corrected = !mo_raw;
      const auto r = integrate_moment(t, kind, mo_k, mo_t, opt);
      used_y = r.y;
      result = moment_json(r);
    } else if (m1->parsed()) {
      command = "moment-r1";
      const auto kind = parse_coefficient_kind(m1_kind);
      const double y = y_given ? cfg.y : 50.0;
      used_y = y;
      const auto n = std::max<std::uint64_t>(1, static_cast<std::uint64_t>(std::floor(y)));
      const auto& t = session.tables(n, kind.weight() == Weight::CuspNormalized ? n : 1);
      result = moment_json(integrate_truncated_moment(t, kind, m1_h, m1_t, y, quad));
    } else if (ve->parsed()) {
      command = "verify";
      const auto [limit, tau] = suite_table_size(ve_suite);
      const auto& t = session.tables(limit, tau);
      SeriesEngine engine(t);
      VerifyContext ctx{t, engine, quad, y_given ? cfg.y : 1e4};
      used_y = ctx.y;
      const auto rep = run_suite(ve_suite, ctx);
      result["suite"] = rep.suite;
      result["passed"] = rep.passed();
      Json rows = Json::array();
      for (const auto& c : rep.checks) {
        rows.push_back({{"check", c.name}, {"status", c.passed ? "pass" : (c.gated ? "FAIL" : "info")},
                        {"detail", c.detail}});
      }
      result["rows"] = rows;
      if (!rep.passed()) status = 1;
    }
  } catch (const ArgumentError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    const bool range = dynamic_cast<const RangeError*>(&e) != nullptr;
    const bool resource = dynamic_cast<const ResourceError*>(&e) != nullptr;
    if (cfg.format == "json") {
      Json j;
      j["error"] = {{"type", range ? "range" : resource ? "resource" : "internal"}, {"message", e.what()}};
      out << j.dump(2) << "\n";
    } else {
      err << "error: " << e.what() << "\n";
    }
    return 1;
  }

  Json report;
  report["command"] = command;
  report["version"] = version_string();
  report["config"] = config_json(cfg);
  report["table_limit"] = session.table ? Json(session.table->limit()) : Json(nullptr);
  report["y"] = optional_number(used_y);
  report["result"] = result;
  report["wall_time_s"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  if (cfg.format == "json") {
    out << report.dump(2) << "\n";
  } else {
    write_csv(report, out);
  }
  return status;
}

int run(int argc, char** argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args, std::cout, std::cerr);
}

}  // namespace vm
