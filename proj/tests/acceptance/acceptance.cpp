// Runs the twelve acceptance criteria and prints one PASS/FAIL line for each,
// followed by indented detail lines. Exit status is the number of failures.

#include "catfin/catfin.hpp"

#include <chrono>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <thread>
#include <tuple>

using namespace catfin;

namespace {

std::size_t workers() { return std::max(1u, std::thread::hardware_concurrency()); }

struct Outcome {
  bool pass = true;
  std::vector<std::string> details;

  void fail(const std::string& why) {
    pass = false;
    if (details.size() < 12) details.push_back(why);
  }
  void note(const std::string& what) { details.push_back(what); }
};

template <typename... Ts>
std::string str(const Ts&... parts) {
  std::ostringstream os;
  (os << ... << parts);
  return os.str();
}

Outcome reflection_correctness() {
  Outcome o;
  int cells = 0;
  for (int n = 0; n <= 9; ++n)
    for (int m = 0; m <= 5; ++m)
      for (int s = 0; s <= 3; ++s) {
        ++cells;
        const Integer f = bounded_formula(n, m, s);
        const Integer e = count_bounded_enum({n, m, s});
        if (f != e) o.fail(str("n=", n, " m=", m, " s=", s, ": formula ", f, " enumeration ", e));
      }
  o.note(str(cells, " cells compared"));
  return o;
}

Outcome catalan_baseline() {
  Outcome o;
  for (int n = 0; n <= 10; ++n) {
    const Integer c = catalan_formula(n);
    if (c != count_dyck_enum(n)) o.fail(str("n=", n, ": C_n ", c, " vs enumeration ", count_dyck_enum(n)));
    for (int m = n; m <= n + 5; ++m)
      if (bounded_formula(n, m, 0) != c) o.fail(str("n=", n, " m=", m, ": bounded sum has not stabilised"));
    if (n >= 1 && bounded_formula(n, n - 1, 0) >= c) o.fail(str("n=", n, ": bound n-1 should cut paths"));
  }
  o.note("n <= 10, limit checked for m = n..n+5");
  return o;
}

Outcome complex_euler() {
  Outcome o;
  int cells = 0;
  for (int n = 0; n <= 8; ++n)
    for (int order = 2; order <= 8; ++order)
      for (int s = 0; s <= order - 2; ++s) {
        const int m = order - 2 - s;
        ++cells;
        const Integer chi = euler_char(build_complex(2 * n, n, m, s));
        if (chi != bounded_formula(n, m, s))
          o.fail(str("n=", n, " m=", m, " s=", s, ": euler ", chi, " vs ", bounded_formula(n, m, s)));
      }
  o.note(str(cells, " complexes"));
  return o;
}

Outcome algebraic_soundness() {
  Outcome o;
  int complexes = 0;
  for (int order = 2; order <= 7; ++order)
    for (int M = 1; M <= 10; ++M) {
      if (!check_nilpotent(M, order)) o.fail(str("sigma^N != 0 for M=", M, " N=", order));
      SigmaPowers powers(M, order);
      for (int s = 0; s <= order - 2; ++s)
        for (int c = 0; c <= M; ++c) {
          ++complexes;
          const auto cx = build_complex(M, c, order - 2 - s, s);
          if (!check_d_squared(cx, powers)) o.fail(str("d^2 != 0 for M=", M, " c=", c, " m=", order - 2 - s, " s=", s));
        }
    }
  o.note(str("nilpotency for 60 (M, N) pairs, d^2 = 0 on ", complexes, " complexes"));
  return o;
}

Outcome homology_concentration() {
  Outcome o;
  int complexes = 0;
  std::size_t fallbacks = 0;
  std::map<std::string, int> carriers;
  int exact_elsewhere = 0;
  for (int n = 0; n <= 6; ++n)
    for (int order = 2; order <= 6; ++order) {
      const int m = order - 2;
      const auto cx = build_complex(2 * n, n, m, 0);
      const auto h = homology_ranks(cx);
      fallbacks += h.exact_fallbacks;
      ++complexes;
      const std::string where = str("n=", n, " N=", order);
      std::size_t nonzero = 0, total = 0;
      std::string carrier = "none";
      for (std::size_t k = 0; k < h.entries.size(); ++k) {
        const auto& e = h.entries[k];
        if (k > 0 && k + 1 < h.entries.size() && e.rank_in + e.rank_out != e.dimension)
          o.fail(where + str(": index ", e.index, " is interior but not exact"));
        if (e.homology() != 0) {
          ++nonzero;
          const bool extremal = k == 0 || k + 1 == h.entries.size();
          carrier = str("index ", e.index, " (degree c = n, ", extremal ? "extremal)" : "interior)");
        }
        total += e.homology();
      }
      ++carriers[carrier];
      exact_elsewhere += nonzero <= 1;
      const Integer chi = euler_char(cx);
      const Integer abs_chi = chi < 0 ? Integer(-chi) : chi;
      if (nonzero > 1) o.fail(where + str(": homology in ", nonzero, " degrees"));
      if (Integer(static_cast<unsigned long>(total)) != abs_chi) o.fail(where + str(": homology ", total, " vs |euler| ", abs_chi));
    }
  o.note(str(complexes, " complexes, ", fallbacks, " exact-rank fallbacks"));
  o.note(str(exact_elsewhere, " of ", complexes, " complexes have homology in at most one index"));
  for (const auto& [where, count] : carriers) o.note(str("homology carried at ", where, ": ", count, " complexes"));
  return o;
}

Outcome qdim_identity() {
  Outcome o;
  for (int M = 0; M <= 14; ++M)
    for (int k = 0; k <= M; ++k)
      if (graded_qdim(M, k) != q_binomial(M, k)) o.fail(str("M=", M, " k=", k));
  o.note("M <= 14, all k");
  return o;
}

void summarize(const VerificationReport& r, Outcome& o) {
  o.note(str(r.cells.size(), " cells: ", r.count(CellStatus::match), " match, ", r.count(CellStatus::mismatch),
             " mismatch, ", r.count(CellStatus::out_of_family), " out-of-family"));
  std::map<std::string, std::size_t> groups;
  for (const auto& c : r.counterexamples) {
    std::ostringstream key;
    for (const char* k : {"d", "N", "m", "s"})
      if (c.params.count(k)) key << k << '=' << c.params.at(k) << ' ';
    ++groups[key.str()];
  }
  for (const auto& [k, count] : groups) o.fail(str("mismatches at ", k, "x", count));
  if (!r.counterexamples.empty()) {
    const auto& c = r.counterexamples.front();
    std::ostringstream first;
    for (const auto& [k, v] : c.params) first << k << '=' << v << ' ';
    o.note(str("first: ", first.str(), "expected ", c.expected, ", got ", std::get<Integer>(c.value)));
  }
}

Outcome proposition1() {
  Outcome o;
  const auto r = verify_prop1(30, workers());
  summarize(r, o);
  std::set<std::tuple<long long, long long, long long>> oof;
  for (const auto& c : r.cells)
    if (c.status == CellStatus::out_of_family) oof.emplace(c.params.at("N"), c.params.at("m"), c.params.at("s"));
  for (const auto& [N, m, s] : oof) {
    o.note(str("out-of-family surfaced for review: N=", N, " m=", m, " s=", s));
    if (N != 6) o.fail("out-of-family cell outside N = 6");
  }
  return o;
}

Outcome proposition2() {
  Outcome o;
  summarize(verify_prop2(25, 20, workers()), o);
  return o;
}

Outcome proposition3() {
  Outcome o;
  const auto r = verify_prop3(10, workers());
  summarize(r, o);
  std::map<long long, std::string> table;
  for (const auto& c : r.cells) {
    auto& line = table[c.params.at("n")];
    line += str(" [", c.expected, ": a=", c.observed.count("a") ? std::to_string(c.observed.at("a")) : "-",
                " k=", c.observed.count("k") ? std::to_string(c.observed.at("k")) : "-", "]");
  }
  for (const auto& [n, line] : table) o.note(str("n=", n, line));
  return o;
}

Outcome qcatalan_limit() {
  Outcome o;
  const ExponentFn f("catalan", 0, 2);
  for (int n = 0; n <= 10; ++n) {
    const auto terms = qchi_terms(2 * n, n, n, 0);
    const std::size_t expected = n == 0 ? 1 : 2;
    if (terms.size() != expected) o.fail(str("n=", n, ": ", terms.size(), " pieces survive, expected ", expected));
    if (combine_qchi(terms, f) != q_catalan(n)) o.fail(str("n=", n, ": chi_q ", combine_qchi(terms, f).to_string()));
    if (eval_at_one(q_catalan(n)) != catalan_formula(n)) o.fail(str("n=", n, ": q_catalan(1) != C_n"));
  }
  o.note("f(i) = i (A=0, B=2) on the complex with M=2n, c=n, m=n, s=0");
  return o;
}

Outcome generalized_paths() {
  Outcome o;
  std::vector<std::string> matching;
  for (const auto policy : {ContactPolicy::weak, ContactPolicy::edge_strict, ContactPolicy::strict}) {
    int mismatches = 0;
    std::vector<std::string> where;
    for (int n = 0; n <= 8; ++n)
      for (int m = 0; m <= 4; ++m) {
        const Integer sum = altsum_row({3, n, 0, m, 0}).value;
        const Integer count = count_generalized_enum({n, m, policy});
        if (sum != count) {
          ++mismatches;
          if (where.size() < 4) where.push_back(str("(n=", n, " m=", m, ": sum ", sum, " count ", count, ")"));
        }
      }
    std::string line = str(to_string(policy), ": ", mismatches, " mismatches of 45");
    for (const auto& w : where) line += " " + w;
    o.note(line);
    if (mismatches == 0) matching.emplace_back(to_string(policy));
  }
  if (matching.empty()) o.fail("no contact policy matches the whole grid");
  return o;
}

Outcome scan_rediscovery() {
  Outcome o;
  struct Target {
    int order, m, s, a, b;
  };
  for (const auto& t : {Target{3, 1, 0, 3, -1}, Target{5, 3, 0, 5, -3}, Target{5, 2, 1, 5, -1}}) {
    ScanOptions opt;
    opt.order = t.order;
    opt.m = t.m;
    opt.s = t.s;
    opt.max_n = 8;
    opt.jobs = workers();
    const auto ranked = scan_exponents(opt);
    std::size_t rank = 0;
    for (const auto& c : ranked)
      if (c.a == t.a && c.b == t.b) rank = c.rank;
    std::size_t tied = 0;
    for (const auto& c : ranked) tied += c.rank == 1;
    o.note(str("N=", t.order, " partition ", t.s + 1, "+", t.m + 1, ": (", t.a, ",", t.b, ") rank ", rank, ", ", tied,
               " candidate(s) at rank 1, ", ranked.size(), " scanned"));
    if (rank != 1) o.fail(str("(", t.a, ",", t.b, ") not top-ranked"));
  }
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"reflection correctness", reflection_correctness},
      {"Catalan baseline", catalan_baseline},
      {"complex/Euler agreement", complex_euler},
      {"algebraic soundness", algebraic_soundness},
      {"homology concentration", homology_concentration},
      {"q-dimension identity", qdim_identity},
      {"N-periodic sums on Pascal rows", proposition1},
      {"N-periodic sums on 3- and 4-Pascal rows", proposition2},
      {"modified Euler characteristics", proposition3},
      {"q-Catalan limit", qcatalan_limit},
      {"generalized paths", generalized_paths},
      {"exponent-scan rediscovery", scan_rediscovery},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = criteria[i].second();
    } catch (const std::exception& e) {
      outcome.fail(str("exception: ", e.what()));
    }
    const auto ms =
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
    failures += !outcome.pass;
    std::cout << (outcome.pass ? "PASS" : "FAIL") << " criterion " << (i + 1) << ": " << criteria[i].first << " ("
              << ms << " ms)\n";
    for (const auto& d : outcome.details) std::cout << "    " << d << '\n';
    std::cout.flush();
  }
  std::cout << (criteria.size() - static_cast<std::size_t>(failures)) << "/" << criteria.size() << " criteria passed\n";
  return failures;
}
