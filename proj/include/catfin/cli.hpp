#ifndef CATFIN_CLI_HPP
#define CATFIN_CLI_HPP

// The `catfin` command line. run() takes explicit output streams so the whole
// surface can be driven from tests.
//
// Exit codes: 0 success, 1 usage or operational error, 2 a verification or
// oracle comparison that computed fine but disagreed.

#include "catfin/exactnum.hpp"
#include "catfin/oeis.hpp"
#include "catfin/pathlab.hpp"
#include "catfin/propcheck.hpp"
#include "catfin/qcomplex.hpp"
#include "catfin/reflection.hpp"
#include "catfin/serialize.hpp"
#include "catfin/triangles.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace catfin::cli {

enum class Format { json, csv, table };

inline Format parse_format(std::string_view s) {
  if (s == "json") return Format::json;
  if (s == "csv") return Format::csv;
  if (s == "table") return Format::table;
  throw std::invalid_argument("unknown output format: " + std::string(s));
}

/// Raised for bad flag combinations that CLI11 cannot express.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct Config {
  EnumBudget enum_budget;
  MatrixBudget matrix_budget;
  std::optional<Format> format;  // unset: each subcommand picks its own default
  std::size_t jobs = 1;
  OeisConfig oeis;

  void validate() const {
    if (enum_budget.max_states == 0 || matrix_budget.max_dimension == 0 || matrix_budget.max_rank_dimension == 0)
      throw UsageError("budgets must be positive");
    if (jobs == 0) throw UsageError("--jobs must be positive");
  }
};

inline constexpr const char* kCacheEnv = "CATFIN_CACHE_DIR";

namespace detail {

inline std::string trim(std::string s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

inline bool parse_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw UsageError("config key " + key + ": expected a boolean, got '" + v + "'");
}

inline std::uint64_t parse_positive(const std::string& key, const std::string& v) {
  std::size_t used = 0;
  unsigned long long x = 0;
  try {
    x = std::stoull(v, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != v.size() || x == 0 || v.front() == '-') throw UsageError("config key " + key + ": expected a positive integer");
  return x;
}

}  // namespace detail

/// Defaults, with the cache directory taken from CATFIN_CACHE_DIR when set.
inline Config default_config() {
  Config c;
  if (const char* env = std::getenv(kCacheEnv); env && *env) {
    c.oeis.cache_dir = env;
  } else if (const char* home = std::getenv("HOME"); home && *home) {
    c.oeis.cache_dir = std::filesystem::path(home) / ".cache" / "catfin";
  }
  return c;
}

/// Applies `key = value` lines; '#' starts a comment.
inline void apply_config_text(Config& c, std::istream& in) {
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = detail::trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw UsageError("config line " + std::to_string(number) + ": expected key = value");
    const std::string key = detail::trim(line.substr(0, eq));
    const std::string value = detail::trim(line.substr(eq + 1));
    if (key == "enum_budget") c.enum_budget.max_states = detail::parse_positive(key, value);
    else if (key == "matrix_budget") c.matrix_budget.max_dimension = detail::parse_positive(key, value);
    else if (key == "rank_budget") c.matrix_budget.max_rank_dimension = detail::parse_positive(key, value);
    else if (key == "format") c.format = parse_format(value);
    else if (key == "jobs") c.jobs = detail::parse_positive(key, value);
    else if (key == "oeis.enabled") c.oeis.enabled = detail::parse_bool(key, value);
    else if (key == "oeis.endpoint") c.oeis.endpoint = value;
    else if (key == "oeis.cache") c.oeis.cache_dir = value;
    else if (key == "oeis.offline") c.oeis.offline = detail::parse_bool(key, value);
    else throw UsageError("config line " + std::to_string(number) + ": unknown key '" + key + "'");
  }
}

inline void apply_config_file(Config& c, const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read config file " + path.string());
  apply_config_text(c, in);
}

/// pentagonal | rr14 | rr23 | the long names | custom:A,B
inline ExponentFn parse_exponent_fn(const std::string& spec) {
  if (spec.rfind("custom:", 0) == 0) {
    const std::string body = spec.substr(7);
    const auto comma = body.find(',');
    if (comma == std::string::npos) throw UsageError("custom exponent must look like custom:A,B");
    try {
      return ExponentFn(spec, std::stoi(body.substr(0, comma)), std::stoi(body.substr(comma + 1)));
    } catch (const std::invalid_argument& e) {
      throw UsageError(std::string("custom exponent: ") + e.what());
    } catch (const std::out_of_range&) {
      throw UsageError("custom exponent out of range");
    }
  }
  try {
    return exponent_fn(spec).fn;
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

inline std::vector<long long> parse_int_list(const std::string& text) {
  std::vector<long long> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = detail::trim(item);
    std::size_t used = 0;
    long long v = 0;
    try {
      v = std::stoll(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (item.empty() || used != item.size()) throw UsageError("expected a comma-separated integer list, got '" + text + "'");
    out.push_back(v);
  }
  return out;
}

inline std::pair<int, int> parse_range(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw UsageError("range must look like LO:HI");
  try {
    const int lo = std::stoi(text.substr(0, colon));
    const int hi = std::stoi(text.substr(colon + 1));
    if (lo > hi) throw UsageError("empty range " + text);
    return {lo, hi};
  } catch (const UsageError&) {
    throw;
  } catch (const std::exception&) {
    throw UsageError("range must look like LO:HI");
  }
}

// ---------------------------------------------------------------------------
// Renderers

inline void render_triangle(int d, int rows, Format format, std::ostream& out) {
  std::vector<TriangleRow> all;
  for (int r = 0; r < rows; ++r) all.push_back(d_pascal_row(d, r));
  if (format == Format::json) {
    json::Json arr = json::Json::array();
    for (const auto& row : all) arr.push_back(json::encode(row));
    out << json::dump(arr);
    return;
  }
  if (format == Format::csv) {
    // One column per weight, so every row lines up under its centre.
    const long long half = static_cast<long long>(d - 1) * (rows - 1);
    for (const auto& row : all) {
      for (long long e = -half; e <= half; ++e) {
        if (e > -half) out << ',';
        if (row.coeffs.terms().count(e)) out << row.coeffs.coefficient(e);
      }
      out << '\n';
    }
    return;
  }
  std::vector<std::string> lines;
  for (const auto& row : all) {
    std::string line;
    for (const auto& v : row.entries()) line += (line.empty() ? "" : " ") + v.str();
    lines.push_back(line);
  }
  const std::size_t width = lines.empty() ? 0 : lines.back().size();
  for (const auto& line : lines) out << std::string((width - std::min(width, line.size())) / 2, ' ') << line << '\n';
}

inline void render_kv(const json::Json& obj, std::ostream& out) {
  for (const auto& [k, v] : obj.items()) out << k << ' ' << (v.is_string() ? v.get<std::string>() : v.dump()) << '\n';
}

inline void render_report_table(const VerificationReport& r, std::ostream& out) {
  out << "proposition " << r.proposition << '\n';
  for (const auto& [k, v] : r.grid) out << "grid." << k << ' ' << v << '\n';
  out << "cells " << r.cells.size() << '\n'
      << "match " << r.count(CellStatus::match) << '\n'
      << "mismatch " << r.count(CellStatus::mismatch) << '\n'
      << "out-of-family " << r.count(CellStatus::out_of_family) << '\n';
  auto show = [&](const ReportCell& c) {
    out << "  ";
    for (const auto& [k, v] : c.params) out << k << '=' << v << ' ';
    out << "expected " << c.expected << " got "
        << (std::holds_alternative<Integer>(c.value) ? std::get<Integer>(c.value).str()
                                                     : std::get<LaurentPoly>(c.value).to_string())
        << '\n';
  };
  const std::size_t limit = 20;
  if (!r.counterexamples.empty()) {
    out << "counterexamples (first " << std::min(limit, r.counterexamples.size()) << ")\n";
    for (std::size_t i = 0; i < std::min(limit, r.counterexamples.size()); ++i) show(r.counterexamples[i]);
  }
  std::vector<const ReportCell*> oof;
  for (const auto& c : r.cells)
    if (c.status == CellStatus::out_of_family) oof.push_back(&c);
  if (!oof.empty()) {
    out << "out-of-family (first " << std::min(limit, oof.size()) << ")\n";
    for (std::size_t i = 0; i < std::min(limit, oof.size()); ++i) show(*oof[i]);
  }
}

// ---------------------------------------------------------------------------

struct Options {
  std::string config_path;
  std::string format;
  std::optional<std::size_t> jobs;
  std::optional<std::uint64_t> enum_budget;
  std::optional<std::size_t> matrix_budget;
  std::optional<std::size_t> rank_budget;
  std::string cache_dir;
  bool offline = false;
  bool no_oeis = false;
  std::string endpoint;

  int d = 2, rows = 5;

  std::string paths_action;
  int n = 0;
  std::optional<int> m, s;
  std::string steps = "dyck";
  bool strict = false;
  std::string policy;
  bool oracle = false;

  int row = 0, col = 0, alt_m = 0, alt_s = 0;

  std::string complex_action;
  int M = 0, c = 0, cm = 0, cs = 0;
  std::string f;
  std::string triplets;
  bool exact = false;

  std::string prop;
  int max_rows = 20;
  std::optional<int> max_rows_d4;
  int max_n = 10;
  std::string json_path;

  int order = 5;
  std::string partition = "1,4";
  int scan_max_n = 8;
  std::string a_range = "-20:20", b_range = "-20:20";
  std::size_t top = 10;

  std::string terms;
};

inline Config resolve_config(const Options& o) {
  Config cfg = default_config();
  if (!o.config_path.empty()) apply_config_file(cfg, o.config_path);
  if (const char* env = std::getenv(kCacheEnv); env && *env) cfg.oeis.cache_dir = env;
  if (!o.format.empty()) cfg.format = parse_format(o.format);
  if (o.jobs) cfg.jobs = *o.jobs;
  if (o.enum_budget) cfg.enum_budget.max_states = *o.enum_budget;
  if (o.matrix_budget) cfg.matrix_budget.max_dimension = *o.matrix_budget;
  if (o.rank_budget) cfg.matrix_budget.max_rank_dimension = *o.rank_budget;
  if (!o.cache_dir.empty()) cfg.oeis.cache_dir = o.cache_dir;
  if (o.offline) cfg.oeis.offline = true;
  if (o.no_oeis) cfg.oeis.enabled = false;
  if (!o.endpoint.empty()) cfg.oeis.endpoint = o.endpoint;
  cfg.validate();
  return cfg;
}

inline void emit(const json::Json& j, Format f, std::ostream& out) {
  if (f == Format::json)
    out << json::dump(j);
  else
    render_kv(j, out);
}

inline int cmd_paths(const Options& o, const Config& cfg, std::ostream& out) {
  if (o.n < 0) throw UsageError("--n must be non-negative");
  if ((o.m && *o.m < 0) || (o.s && *o.s < 0)) throw UsageError("--m and --s must be non-negative");
  json::Json result;
  result["n"] = o.n;
  result["steps"] = o.steps;
  result["m"] = o.m ? json::Json(*o.m) : json::Json("unbounded");
  Integer formula;
  std::optional<Integer> oracle;
  if (o.steps == "dyck") {
    if (o.strict || !o.policy.empty()) throw UsageError("--strict and --policy apply to --steps gen3 only");
    const int s = o.s.value_or(0);
    result["s"] = s;
    // A bound of n or more never binds.
    formula = bounded_formula(o.n, o.m.value_or(o.n), s);
    if (o.oracle) oracle = count_bounded_enum({o.n, o.m, s}, cfg.enum_budget);
  } else {
    ContactPolicy policy = o.strict ? ContactPolicy::strict : ContactPolicy::edge_strict;
    if (!o.policy.empty()) {
      try {
        policy = parse_contact_policy(o.policy);
      } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
      }
    }
    result["policy"] = std::string(to_string(policy));
    const int s = o.s.value_or(0);
    result["s"] = s;
    formula = altsum_row({3, o.n, 0, o.m.value_or(o.n), s}).value;
    if (o.oracle) oracle = count_generalized_enum({o.n, o.m, policy, s}, cfg.enum_budget);
  }
  result["formula"] = formula.str();
  int code = 0;
  if (oracle) {
    result["oracle"] = oracle->str();
    result["status"] = *oracle == formula ? "match" : "mismatch";
    if (*oracle != formula) code = 2;
  }
  const Format f = cfg.format.value_or(Format::table);
  if (f == Format::table) {
    out << "formula " << formula << '\n';
    if (oracle) out << "oracle " << *oracle << '\n' << "status " << result["status"].get<std::string>() << '\n';
  } else {
    emit(result, f, out);
  }
  return code;
}

inline int cmd_altsum(const Options& o, const Config& cfg, std::ostream& out) {
  const AltSumResult r = altsum_row({o.d, o.row, o.col, o.alt_m, o.alt_s});
  const Format f = cfg.format.value_or(Format::json);
  if (f == Format::json) {
    out << json::dump(json::encode(r));
  } else {
    const char sep = f == Format::csv ? ',' : ' ';
    out << "index" << sep << "side" << sep << "column" << sep << "sign" << sep << "magnitude\n";
    for (const auto& t : r.terms)
      out << t.index << sep << json::side_name(t.side) << sep << t.column << sep << (t.sign > 0 ? "+" : "-") << sep
          << t.magnitude << '\n';
    out << "value" << sep << r.value << '\n';
  }
  return 0;
}

inline int cmd_qchi(const Options& o, const Config& cfg, std::ostream& out) {
  if (o.f.empty()) throw UsageError("qchi needs --f");
  const ExponentFn fn = parse_exponent_fn(o.f);
  const LaurentPoly chi = modified_euler_char(o.M, o.c, o.cm, o.cs, fn);
  json::Json j = {{"M", o.M}, {"c", o.c}, {"m", o.cm}, {"s", o.cs}, {"f", {{"A", fn.a()}, {"B", fn.b()}}},
                  {"chi", json::encode(chi)}, {"at_one", eval_at_one(chi).str()}};
  const Format f = cfg.format.value_or(Format::json);
  if (f == Format::table)
    out << "chi " << chi.to_string() << '\n' << "at_one " << eval_at_one(chi) << '\n';
  else
    emit(j, f, out);
  return 0;
}

inline int cmd_complex(const Options& o, const Config& cfg, std::ostream& out) {
  if (o.complex_action == "qchi") return cmd_qchi(o, cfg, out);
  const ChainComplex cx = build_complex(o.M, o.c, o.cm, o.cs, cfg.matrix_budget);
  const Format f = cfg.format.value_or(Format::json);
  json::Json j;
  int code = 0;
  if (o.complex_action == "build") {
    j = json::encode(cx);
    SigmaPowers powers(o.M, cx.order(), cfg.matrix_budget);
    const bool d2 = check_d_squared(cx, powers);
    j["d_squared_zero"] = d2;
    if (!d2) code = 2;
    if (!o.triplets.empty()) {
      std::ofstream file(o.triplets);
      if (!file) throw std::runtime_error("cannot write " + o.triplets);
      for (int i = cx.first_index(); i < cx.last_index(); ++i)
        file << "%differential index=" << i << '\n' << to_triplets(cx.differential(i, powers), cx.order());
      j["triplets"] = o.triplets;
    }
  } else if (o.complex_action == "euler") {
    j = {{"M", o.M}, {"c", o.c}, {"m", o.cm}, {"s", o.cs}, {"euler_char", euler_char(cx).str()}};
  } else {
    const auto h = homology_ranks(cx, o.exact ? RankMethod::exact : RankMethod::modular_certified, cfg.matrix_budget);
    j = json::encode(h);
    j["euler_char"] = euler_char(cx).str();
    if (f == Format::table) {
      out << "index degree dim rank_in rank_out homology\n";
      for (const auto& e : h.entries)
        out << e.index << ' ' << e.degree << ' ' << e.dimension << ' ' << e.rank_in << ' ' << e.rank_out << ' '
            << e.homology() << '\n';
      out << "euler_char " << euler_char(cx) << '\n';
      return code;
    }
  }
  if (f == Format::table && o.complex_action == "build") {
    out << "index degree dim d_exponent\n";
    for (const auto& p : cx.pieces())
      out << p.index << ' ' << p.degree << ' ' << p.space.dimension() << ' ' << cx.differential_exponent(p.index) << '\n';
    out << "d_squared_zero " << (j["d_squared_zero"].get<bool>() ? "true" : "false") << '\n';
    return code;
  }
  emit(j, f, out);
  return code;
}

inline int cmd_verify(const Options& o, const Config& cfg, std::ostream& out) {
  VerificationReport r;
  if (o.prop == "prop1")
    r = verify_prop1(o.max_rows, cfg.jobs);
  else if (o.prop == "prop2")
    r = verify_prop2(o.max_rows, o.max_rows_d4.value_or(std::min(o.max_rows, 40)), cfg.jobs);
  else
    r = verify_prop3(o.max_n, cfg.jobs);
  const json::Json j = json::encode(r);
  if (!o.json_path.empty()) {
    std::ofstream file(o.json_path);
    if (!file) throw std::runtime_error("cannot write " + o.json_path);
    file << json::dump(j);
  }
  if (cfg.format.value_or(Format::table) == Format::json)
    out << json::dump(j);
  else
    render_report_table(r, out);
  return r.passed() ? 0 : 2;
}

inline int cmd_scan(const Options& o, const Config& cfg, std::ostream& out) {
  const auto parts = parse_int_list(o.partition);
  if (parts.size() != 2 || parts[0] < 1 || parts[1] < 1) throw UsageError("--partition must be two positive parts a,b");
  if (parts[0] + parts[1] != o.order) throw UsageError("--partition parts must sum to --N");
  ScanOptions opt;
  opt.order = o.order;
  opt.s = static_cast<int>(parts[0] - 1);
  opt.m = static_cast<int>(parts[1] - 1);
  std::tie(opt.a_min, opt.a_max) = parse_range(o.a_range);
  std::tie(opt.b_min, opt.b_max) = parse_range(o.b_range);
  opt.max_n = o.scan_max_n;
  opt.jobs = cfg.jobs;
  const auto ranked = scan_exponents(opt);
  const std::size_t shown = std::min(o.top, ranked.size());
  const Format f = cfg.format.value_or(Format::table);
  if (f == Format::json) {
    json::Json arr = json::Json::array();
    for (std::size_t i = 0; i < shown; ++i) arr.push_back(json::encode(ranked[i]));
    out << json::dump({{"N", o.order}, {"m", opt.m}, {"s", opt.s}, {"max_n", opt.max_n}, {"candidates", arr}});
    return 0;
  }
  const char sep = f == Format::csv ? ',' : ' ';
  out << "rank" << sep << "A" << sep << "B" << sep << "matches" << sep << "sign_defect" << sep << "family\n";
  for (std::size_t i = 0; i < shown; ++i) {
    const auto& c = ranked[i];
    out << c.rank << sep << c.a << sep << c.b << sep << c.matches << '/' << opt.max_n << sep << c.sign_defect << sep;
    if (c.family)
      out << "G_k=G_{k-1}+q^{" << c.family->slope << "k" << (c.family->offset < 0 ? "" : "+") << c.family->offset
          << "}G_{k-2}";
    else
      out << "-";
    out << '\n';
  }
  return 0;
}

inline int cmd_oeis(const Options& o, const Config& cfg, std::ostream& out, std::ostream& err) {
  std::vector<Integer> terms;
  for (long long v : parse_int_list(o.terms)) terms.emplace_back(v);
  if (terms.empty()) throw UsageError("--terms must not be empty");
  const OeisResult r = OeisClient(cfg.oeis).lookup(terms);
  if (r.status == OeisStatus::parse_error) {
    err << "oeis: malformed response (" << r.message << "); raw body follows\n" << r.raw_body << '\n';
    return 1;
  }
  if (r.status == OeisStatus::skipped) err << "oeis: lookup skipped: " << r.message << '\n';
  const Format f = cfg.format.value_or(Format::table);
  if (f == Format::json) {
    json::Json matches = json::Json::array();
    for (const auto& m : r.matches) matches.push_back({{"id", m.id}, {"name", m.name}});
    out << json::dump({{"query", r.query}, {"status", to_string(r.status)}, {"matches", matches}});
  } else {
    for (const auto& m : r.matches) out << m.id << (f == Format::csv ? "," : " ") << m.name << '\n';
  }
  return 0;
}

/// Parses argv (including the program name) and runs one subcommand.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Exact finitized Catalan numbers: triangles, bounded paths, reflection sums, q-complexes"};
  app.name("catfin");
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--config", o.config_path, "key=value configuration file")->check(CLI::ExistingFile);
  app.add_option("--format", o.format, "json | csv | table")->check(CLI::IsMember({"json", "csv", "table"}));
  app.add_option("--jobs", o.jobs, "worker threads for sweeps");
  app.add_option("--enum-budget", o.enum_budget, "maximum enumeration states");
  app.add_option("--matrix-budget", o.matrix_budget, "maximum graded-piece dimension");
  app.add_option("--rank-budget", o.rank_budget, "maximum matrix side for exact elimination");
  app.add_option("--cache-dir", o.cache_dir, "OEIS response cache directory");
  app.add_flag("--offline", o.offline, "never open network connections");
  app.add_flag("--no-oeis", o.no_oeis, "disable OEIS lookups");
  app.add_option("--oeis-endpoint", o.endpoint, "OEIS base URL");

  auto* triangle = app.add_subcommand("triangle", "rows 0..R-1 of the d-Pascal triangle");
  triangle->add_option("--d", o.d, "arity (2 is Pascal)")->check(CLI::Range(2, 64));
  triangle->add_option("--rows", o.rows, "number of rows")->check(CLI::Range(1, 500));

  auto* paths = app.add_subcommand("paths", "bounded path counts");
  paths->add_option("action", o.paths_action)->required()->check(CLI::IsMember({"count"}));
  paths->add_option("--n", o.n)->required();
  paths->add_option("--m", o.m, "upper bound (omit for unbounded)");
  paths->add_option("--s", o.s, "lower shift (default 0)");
  paths->add_option("--steps", o.steps)->check(CLI::IsMember({"dyck", "gen3"}));
  paths->add_flag("--strict", o.strict, "gen3 only: strict contact policy");
  paths->add_option("--policy", o.policy, "gen3 only: weak | edge-strict | strict");
  paths->add_flag("--oracle", o.oracle, "also count by brute-force enumeration");

  auto* altsum = app.add_subcommand("altsum", "alternating reflection sum on a d-Pascal row");
  altsum->add_option("--d", o.d)->check(CLI::Range(2, 64));
  altsum->add_option("--row", o.row)->required()->check(CLI::Range(0, 2000));
  altsum->add_option("--col", o.col);
  altsum->add_option("--m", o.alt_m)->check(CLI::NonNegativeNumber);
  altsum->add_option("--s", o.alt_s)->check(CLI::NonNegativeNumber);

  auto add_complex_options = [&o](CLI::App* sub) {
    sub->add_option("--M", o.M, "generators")->required()->check(CLI::Range(0, kMaxGenerators));
    sub->add_option("--c", o.c, "base degree")->required();
    sub->add_option("--m", o.cm)->required()->check(CLI::NonNegativeNumber);
    sub->add_option("--s", o.cs)->required()->check(CLI::NonNegativeNumber);
    sub->add_option("--f", o.f, "pentagonal | rr14 | rr23 | custom:A,B");
  };
  auto* complex = app.add_subcommand("complex", "quantum exterior algebra complexes");
  complex->add_option("action", o.complex_action)->required()->check(CLI::IsMember({"build", "euler", "homology", "qchi"}));
  add_complex_options(complex);
  complex->add_option("--triplets", o.triplets, "build: write differentials as sparse triplets to this file");
  complex->add_flag("--exact", o.exact, "homology: exact elimination only");

  auto* qchi = app.add_subcommand("qchi", "modified Euler characteristic");
  add_complex_options(qchi);

  auto* verify = app.add_subcommand("verify", "sweep verifiers");
  verify->add_option("prop", o.prop)->required()->check(CLI::IsMember({"prop1", "prop2", "prop3"}));
  verify->add_option("--max-rows", o.max_rows)->check(CLI::Range(1, 60));
  verify->add_option("--max-rows-d4", o.max_rows_d4, "prop2: rows for the 4-Pascal sweep")->check(CLI::Range(1, 40));
  verify->add_option("--max-n", o.max_n, "prop3: largest n")->check(CLI::Range(1, 12));
  verify->add_option("--json", o.json_path, "write the full report here");

  auto* scan = app.add_subcommand("scan", "rank quadratic exponent functions");
  scan->add_option("--N", o.order)->required()->check(CLI::Range(2, 12));
  scan->add_option("--partition", o.partition, "a,b with a + b = N");
  scan->add_option("--max-n", o.scan_max_n)->check(CLI::Range(1, 12));
  scan->add_option("--a-range", o.a_range, "LO:HI");
  scan->add_option("--b-range", o.b_range, "LO:HI");
  scan->add_option("--top", o.top, "candidates to print");

  auto* oeis = app.add_subcommand("oeis", "look up a term list in the OEIS");
  oeis->add_option("--terms", o.terms, "comma-separated integers")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  try {
    const Config cfg = resolve_config(o);
    if (triangle->parsed()) {
      render_triangle(o.d, o.rows, cfg.format.value_or(Format::table), out);
      return 0;
    }
    if (paths->parsed()) return cmd_paths(o, cfg, out);
    if (altsum->parsed()) return cmd_altsum(o, cfg, out);
    if (complex->parsed()) return cmd_complex(o, cfg, out);
    if (qchi->parsed()) return cmd_qchi(o, cfg, out);
    if (verify->parsed()) return cmd_verify(o, cfg, out);
    if (scan->parsed()) return cmd_scan(o, cfg, out);
    if (oeis->parsed()) return cmd_oeis(o, cfg, out, err);
  } catch (const BudgetExceeded& e) {
    err << "budget error: " << e.what() << '\n';
    return 1;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv{"catfin"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace catfin::cli

#endif  // CATFIN_CLI_HPP
