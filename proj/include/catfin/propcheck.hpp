#ifndef CATFIN_PROPCHECK_HPP
#define CATFIN_PROPCHECK_HPP

// Sequence recognizers, sweep verifiers for the alternating-sum and
// modified-Euler-characteristic claims, and the quadratic exponent scanner.

#include "catfin/exactnum.hpp"
#include "catfin/qcomplex.hpp"
#include "catfin/reflection.hpp"
#include "catfin/triangles.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <thread>
#include <variant>
#include <vector>

namespace catfin {

// ---------------------------------------------------------------------------
// Reference sequences

enum class Sequence { fibonacci, jacobsthal, power2, power3, floor3, ceil3 };

inline Sequence parse_sequence(std::string_view name) {
  if (name == "fibonacci") return Sequence::fibonacci;
  if (name == "jacobsthal") return Sequence::jacobsthal;
  if (name == "power2") return Sequence::power2;
  if (name == "power3") return Sequence::power3;
  if (name == "floor3") return Sequence::floor3;
  if (name == "ceil3") return Sequence::ceil3;
  throw std::invalid_argument("unknown sequence: " + std::string(name));
}

inline Integer reference_sequence(Sequence seq, int n) {
  if (n < 0) throw std::invalid_argument("reference_sequence: n must be non-negative");
  auto linear = [n](int weight) {
    Integer a = 0;
    Integer b = 1;
    for (int i = 0; i < n; ++i) {
      Integer next = b + weight * a;
      a = b;
      b = next;
    }
    return a;
  };
  Integer p3 = 1;
  switch (seq) {
    case Sequence::fibonacci: return linear(1);
    case Sequence::jacobsthal: return linear(2);
    case Sequence::power2: return Integer(1) << n;
    case Sequence::power3:
    case Sequence::floor3:
    case Sequence::ceil3:
      for (int i = 0; i < n; ++i) p3 *= 3;
      if (seq == Sequence::power3) return p3;
      return seq == Sequence::floor3 ? Integer(p3 / 2) : Integer((p3 + 1) / 2);
  }
  throw std::logic_error("reference_sequence: unhandled sequence");
}

/// Smallest n with reference_sequence(seq, n) == v, searching while the
/// sequence has not passed v (all sequences are eventually increasing).
inline std::optional<int> sequence_index(Sequence seq, const Integer& v) {
  if (v < 0) return std::nullopt;
  for (int n = 0;; ++n) {
    const Integer t = reference_sequence(seq, n);
    if (t == v) return n;
    if (t > v && n > 2) return std::nullopt;
  }
}

// ---------------------------------------------------------------------------
// Named exponent functions

struct NamedExponent {
  ExponentFn fn;
  int m;  // the partition N = (s+1) + (m+1) it belongs to
  int s;
};

inline NamedExponent exponent_fn(std::string_view name) {
  if (name == "pentagonal_1_2" || name == "pentagonal") return {ExponentFn("pentagonal_1_2", 3, -1), 1, 0};
  if (name == "rr_1_4" || name == "rr14") return {ExponentFn("rr_1_4", 5, -3), 3, 0};
  if (name == "rr_2_3" || name == "rr23") return {ExponentFn("rr_2_3", 5, -1), 2, 1};
  throw std::invalid_argument("unknown exponent function: " + std::string(name));
}

// ---------------------------------------------------------------------------
// Reports

enum class CellStatus { match, mismatch, out_of_family };

inline std::string_view to_string(CellStatus s) {
  switch (s) {
    case CellStatus::match: return "match";
    case CellStatus::mismatch: return "mismatch";
    case CellStatus::out_of_family: return "out-of-family";
  }
  return "?";
}

struct ReportCell {
  std::map<std::string, long long> params;
  CellStatus status = CellStatus::match;
  std::string expected;  // the claimed family
  std::variant<Integer, LaurentPoly> value;
  std::map<std::string, long long> observed;  // index maps, monomial exponents, signs
};

struct RuntimeStats {
  double elapsed_ms = 0;
  std::size_t jobs = 1;
};

struct VerificationReport {
  std::string proposition;
  std::map<std::string, std::string> grid;
  std::vector<ReportCell> cells;
  std::vector<ReportCell> counterexamples;
  RuntimeStats runtime;

  std::size_t count(CellStatus s) const {
    return static_cast<std::size_t>(std::count_if(cells.begin(), cells.end(), [s](const auto& c) { return c.status == s; }));
  }
  bool passed() const { return count(CellStatus::mismatch) == 0; }

  void collect_counterexamples() {
    counterexamples.clear();
    for (const auto& c : cells)
      if (c.status == CellStatus::mismatch) counterexamples.push_back(c);
  }
};

namespace detail {

inline void parallel_for(std::size_t count, std::size_t jobs, const std::function<void(std::size_t)>& body) {
  jobs = std::max<std::size_t>(1, std::min(jobs, count));
  if (jobs == 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> workers;
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  for (std::size_t w = 0; w < jobs; ++w) {
    workers.emplace_back([&] {
      try {
        for (std::size_t i = next++; i < count && !failed; i = next++) body(i);
      } catch (...) {
        if (!failed.exchange(true)) failure = std::current_exception();
      }
    });
  }
  for (auto& t : workers) t.join();
  if (failure) std::rethrow_exception(failure);
}

struct Claim {
  std::string family;
  std::function<std::pair<CellStatus, std::optional<int>>(const Integer&)> test;
};

inline Integer magnitude(const Integer& v) { return v < 0 ? Integer(-v) : v; }

inline Claim claim_zero() {
  return {"0", [](const Integer& v) { return std::make_pair(v == 0 ? CellStatus::match : CellStatus::mismatch, std::optional<int>{}); }};
}

inline Claim claim_unit() {
  return {"{0,+-1}", [](const Integer& v) {
            return std::make_pair(magnitude(v) <= 1 ? CellStatus::match : CellStatus::mismatch, std::optional<int>{});
          }};
}

inline Claim claim_sequence(std::string family, Sequence seq) {
  return {std::move(family), [seq](const Integer& v) {
            auto k = sequence_index(seq, magnitude(v));
            return std::make_pair(k ? CellStatus::match : CellStatus::mismatch, k);
          }};
}

inline Claim claim_power2() {
  return {"0 or +-2^k", [](const Integer& v) {
            if (v == 0) return std::make_pair(CellStatus::match, std::optional<int>{});
            auto k = sequence_index(Sequence::power2, magnitude(v));
            return std::make_pair(k ? CellStatus::match : CellStatus::mismatch, k);
          }};
}

// The N = 6 clause lists three families and then trails off, so anything else
// is surfaced as out-of-family rather than counted as a violation.
inline Claim claim_three_families() {
  return {"0 or +-3^k, +-floor(3^k/2), +-ceil(3^k/2)", [](const Integer& v) {
            const Integer a = magnitude(v);
            if (a == 0) return std::make_pair(CellStatus::match, std::optional<int>{});
            for (Sequence s : {Sequence::power3, Sequence::floor3, Sequence::ceil3})
              if (auto k = sequence_index(s, a)) return std::make_pair(CellStatus::match, k);
            return std::make_pair(CellStatus::out_of_family, std::optional<int>{});
          }};
}

inline std::optional<Claim> alternating_sum_claim(int arity, int order) {
  if (arity == 2) {
    switch (order) {
      case 2: return claim_zero();
      case 3: return claim_unit();
      case 4: return claim_power2();
      case 5: return claim_sequence("+-Fibonacci", Sequence::fibonacci);
      case 6: return claim_three_families();
    }
  } else if (arity == 3) {
    switch (order) {
      case 3: return claim_zero();
      case 2:
      case 4: return claim_unit();
      case 5: return claim_sequence("+-Fibonacci", Sequence::fibonacci);
      case 6: return claim_sequence("+-Jacobsthal", Sequence::jacobsthal);
    }
  } else if (arity == 4) {
    switch (order) {
      case 2:
      case 4: return claim_zero();
      case 3:
      case 5: return claim_unit();
    }
  }
  return std::nullopt;
}

struct SweepPlan {
  int arity;
  int max_row;
  std::vector<int> orders;
};

inline void run_sweep(const SweepPlan& plan, std::size_t jobs, std::vector<ReportCell>& out) {
  std::vector<TriangleRow> rows;
  for (int r = 0; r <= plan.max_row; ++r) rows.push_back(d_pascal_row(plan.arity, r));

  struct Spec {
    int order, m, s, row, col;
    const Claim* claim;
  };
  std::vector<Claim> claims;
  claims.reserve(plan.orders.size());
  std::vector<Spec> specs;
  for (int order : plan.orders) {
    auto claim = alternating_sum_claim(plan.arity, order);
    if (!claim) throw std::invalid_argument("no claim registered for this arity and N");
    claims.push_back(std::move(*claim));
    for (int s = 0; s <= order - 2; ++s)
      for (int r = 1; r <= plan.max_row; ++r)
        for (int c = 0; c < order; ++c) specs.push_back({order, order - 2 - s, s, r, c, &claims.back()});
  }

  const std::size_t base = out.size();
  out.resize(base + specs.size());
  parallel_for(specs.size(), jobs, [&](std::size_t i) {
    const Spec& sp = specs[i];
    const Integer v = altsum_value(rows[static_cast<std::size_t>(sp.row)], sp.col, sp.m, sp.s);
    auto [status, index] = sp.claim->test(v);
    ReportCell cell;
    cell.params = {{"d", plan.arity}, {"row", sp.row}, {"col", sp.col}, {"m", sp.m}, {"s", sp.s}, {"N", sp.order}};
    cell.status = status;
    cell.expected = sp.claim->family;
    cell.value = v;
    if (index) cell.observed["k"] = *index;
    out[base + i] = std::move(cell);
  });
}

template <class Fn>
VerificationReport timed(std::size_t jobs, Fn&& fn) {
  const auto t0 = std::chrono::steady_clock::now();
  VerificationReport report = fn();
  report.collect_counterexamples();
  report.runtime.jobs = jobs;
  report.runtime.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return report;
}

}  // namespace detail

/// Pascal rows 1..max_row, every base column residue, every partition of
/// N = 2..6.
inline VerificationReport verify_prop1(int max_row, std::size_t jobs = 1) {
  if (max_row < 1 || max_row > 60) throw std::invalid_argument("verify_prop1: max_row must be in [1, 60]");
  return detail::timed(jobs, [&] {
    VerificationReport r;
    r.proposition = "prop1";
    r.grid = {{"d", "2"}, {"rows", "1.." + std::to_string(max_row)}, {"N", "2..6"}, {"partitions", "all"}, {"base_col", "0..N-1"}};
    detail::run_sweep({2, max_row, {2, 3, 4, 5, 6}}, jobs, r.cells);
    return r;
  });
}

/// 3-Pascal rows 1..max_row_d3 for N = 2..6 and 4-Pascal rows 1..max_row_d4
/// for N = 2..5, every partition and base column residue.
inline VerificationReport verify_prop2(int max_row_d3, int max_row_d4, std::size_t jobs = 1) {
  if (max_row_d3 < 1 || max_row_d3 > 40 || max_row_d4 < 1 || max_row_d4 > 40)
    throw std::invalid_argument("verify_prop2: rows must be in [1, 40]");
  return detail::timed(jobs, [&] {
    VerificationReport r;
    r.proposition = "prop2";
    r.grid = {{"d3_rows", "1.." + std::to_string(max_row_d3)}, {"d3_N", "2..6"},
              {"d4_rows", "1.." + std::to_string(max_row_d4)}, {"d4_N", "2..5"},
              {"partitions", "all"}, {"base_col", "0..N-1"}};
    detail::run_sweep({3, max_row_d3, {2, 3, 4, 5, 6}}, jobs, r.cells);
    detail::run_sweep({4, max_row_d4, {2, 3, 4, 5}}, jobs, r.cells);
    return r;
  });
}

/// If a = sign * q^shift * b, returns (sign, shift).
inline std::optional<std::pair<int, LaurentPoly::Exponent>> monomial_ratio(const LaurentPoly& a, const LaurentPoly& b) {
  if (a.is_zero() || b.is_zero() || a.size() != b.size()) return std::nullopt;
  const auto shift = a.min_exponent() - b.min_exponent();
  const LaurentPoly moved = b.shifted(shift);
  if (a == moved) return std::make_pair(1, shift);
  if (a == -moved) return std::make_pair(-1, shift);
  return std::nullopt;
}

struct Prop3Clause {
  std::string name;
  NamedExponent exponent;
  std::optional<FibVariant> variant;  // none: the value must be 0 or a signed monomial
};

inline std::vector<Prop3Clause> prop3_clauses() {
  return {{"N3_pentagonal", exponent_fn("pentagonal_1_2"), std::nullopt},
          {"N5_rr_1_4", exponent_fn("rr_1_4"), FibVariant::F},
          {"N5_rr_2_3", exponent_fn("rr_2_3"), FibVariant::Fprime}};
}

/// For n = 1..max_n, chi_q of the complex on 2n generators centred at n:
/// N = 3 with f_{1+2} must be 0 or +-q^a; N = 5 with f_{1+4} (f_{2+3}) must be
/// +-q^a F_k (+-q^a F'_k). The q = 1 value must also equal the reflection sum.
inline VerificationReport verify_prop3(int max_n, std::size_t jobs = 1) {
  if (max_n < 1 || max_n > 12) throw std::invalid_argument("verify_prop3: max_n must be in [1, 12]");
  return detail::timed(jobs, [&] {
    VerificationReport r;
    r.proposition = "prop3";
    r.grid = {{"n", "1.." + std::to_string(max_n)}, {"M", "2n"}, {"c", "n"},
              {"clauses", "N3_pentagonal (m=1,s=0); N5_rr_1_4 (m=3,s=0); N5_rr_2_3 (m=2,s=1)"}};
    const auto clauses = prop3_clauses();
    const int max_k = 4 * max_n + 4;
    std::map<FibVariant, std::vector<LaurentPoly>> fib;
    for (FibVariant v : {FibVariant::F, FibVariant::Fprime})
      for (int k = 0; k <= max_k; ++k) fib[v].push_back(q_fibonacci(k, v));

    r.cells.resize(clauses.size() * static_cast<std::size_t>(max_n));
    detail::parallel_for(r.cells.size(), jobs, [&](std::size_t idx) {
      const auto& clause = clauses[idx / static_cast<std::size_t>(max_n)];
      const int n = static_cast<int>(idx % static_cast<std::size_t>(max_n)) + 1;
      const auto& ex = clause.exponent;
      const LaurentPoly chi = modified_euler_char(2 * n, n, ex.m, ex.s, ex.fn);
      ReportCell cell;
      cell.params = {{"n", n}, {"M", 2 * n}, {"c", n}, {"m", ex.m}, {"s", ex.s}, {"N", ex.m + ex.s + 2}};
      cell.value = chi;
      bool shape_ok = false;
      if (!clause.variant) {
        cell.expected = "0 or +-q^a";
        shape_ok = chi.is_zero() || (chi.is_monomial() && detail::magnitude(chi.terms().begin()->second) == 1);
        if (!chi.is_zero()) {
          cell.observed["a"] = chi.min_exponent();
          cell.observed["sign"] = chi.terms().begin()->second > 0 ? 1 : -1;
        }
      } else {
        cell.expected = *clause.variant == FibVariant::F ? "+-q^a F_k" : "+-q^a F'_k";
        const auto& table = fib.at(*clause.variant);
        for (int k = 1; k <= max_k && !shape_ok; ++k) {
          if (auto ratio = monomial_ratio(chi, table[static_cast<std::size_t>(k)])) {
            shape_ok = true;
            cell.observed["k"] = k;
            cell.observed["a"] = ratio->second;
            cell.observed["sign"] = ratio->first;
          }
        }
      }
      // Weights drop out at q = 1, leaving the ordinary reflection sum.
      const bool q1_ok = eval_at_one(chi) == bounded_formula(n, ex.m, ex.s);
      cell.status = shape_ok && q1_ok ? CellStatus::match : CellStatus::mismatch;
      cell.params["clause"] = static_cast<long long>(idx / static_cast<std::size_t>(max_n));
      r.cells[idx] = std::move(cell);
    });
    return r;
  });
}

// ---------------------------------------------------------------------------
// Exponent scan

/// G_k = G_{k-1} + q^{slope*k + offset} G_{k-2}, G_0 = 0, G_1 = 1.
/// F is (1, -1); F' is (1, -2).
struct RecurrenceFamily {
  int slope = 1;
  int offset = -1;
  friend bool operator==(const RecurrenceFamily&, const RecurrenceFamily&) = default;
};

struct ScanCandidate {
  int a = 0;
  int b = 0;
  std::size_t rank = 0;     // 1-based; ties share the first position of their group
  std::size_t matches = 0;  // n values whose chi_q is +-q^e G_k for the best family
  Integer sign_defect;      // sum over n of (sum |coeff| - |chi_q(1)|)
  std::optional<RecurrenceFamily> family;
  std::vector<int> indices;  // k(n) under the best family, -1 when unmatched
};

struct ScanOptions {
  int order = 5;
  int m = 3;
  int s = 0;
  int a_min = -20, a_max = 20;
  int b_min = -20, b_max = 20;
  int max_n = 8;
  std::size_t jobs = 1;
};

/// Every integer-valued f(i) = (A i^2 + B i)/2 in range, ranked by how many
/// n in 1..max_n give chi_q of Fibonacci-recurrence shape, then by sign
/// coherence, then by |A| + |B|, then (A, B).
inline std::vector<ScanCandidate> scan_exponents(const ScanOptions& opt) {
  if (opt.m + opt.s + 2 != opt.order || opt.m < 0 || opt.s < 0)
    throw std::invalid_argument("scan_exponents: partition does not sum to N");
  if (std::max({std::abs(opt.a_min), std::abs(opt.a_max), std::abs(opt.b_min), std::abs(opt.b_max)}) > 20)
    throw std::invalid_argument("scan_exponents: |A|, |B| must be at most 20");
  if (opt.max_n < 1 || opt.max_n > 12) throw std::invalid_argument("scan_exponents: max_n must be in [1, 12]");

  std::vector<std::vector<QChiTerm>> terms;
  for (int n = 1; n <= opt.max_n; ++n) terms.push_back(qchi_terms(2 * n, n, opt.m, opt.s));

  const int max_k = 2 * opt.max_n + 6;
  std::vector<RecurrenceFamily> families;
  std::vector<std::vector<LaurentPoly>> tables;
  for (int slope = 0; slope <= 2; ++slope) {
    for (int offset = -4; offset <= 4; ++offset) {
      families.push_back({slope, offset});
      std::vector<LaurentPoly> g{LaurentPoly{}, LaurentPoly::constant(1)};
      for (int k = 2; k <= max_k; ++k)
        g.push_back(g[static_cast<std::size_t>(k - 1)] + g[static_cast<std::size_t>(k - 2)].shifted(slope * k + offset));
      tables.push_back(std::move(g));
    }
  }

  std::vector<std::pair<int, int>> grid;
  for (int a = opt.a_min; a <= opt.a_max; ++a)
    for (int b = opt.b_min; b <= opt.b_max; ++b)
      if ((a + b) % 2 == 0) grid.emplace_back(a, b);

  std::vector<ScanCandidate> out(grid.size());
  detail::parallel_for(grid.size(), opt.jobs, [&](std::size_t idx) {
    const auto [a, b] = grid[idx];
    const ExponentFn f("scan", a, b);
    std::vector<LaurentPoly> chis;
    ScanCandidate cand;
    cand.a = a;
    cand.b = b;
    for (const auto& t : terms) {
      chis.push_back(combine_qchi(t, f));
      Integer l1 = 0;
      for (const auto& [e, c] : chis.back().terms()) l1 += detail::magnitude(c);
      cand.sign_defect += l1 - detail::magnitude(eval_at_one(chis.back()));
    }
    for (std::size_t fi = 0; fi < families.size(); ++fi) {
      std::size_t matches = 0;
      std::vector<int> indices;
      for (const auto& chi : chis) {
        int found = -1;
        if (chi.is_zero()) {
          found = 0;
        } else {
          const Integer at_one = detail::magnitude(eval_at_one(chi));
          for (int k = 1; k <= max_k && found < 0; ++k) {
            const auto& g = tables[fi][static_cast<std::size_t>(k)];
            if (g.size() != chi.size() || eval_at_one(g) != at_one) continue;
            if (monomial_ratio(chi, g)) found = k;
          }
        }
        indices.push_back(found);
        if (found >= 0) ++matches;
      }
      if (matches > cand.matches || !cand.family) {
        cand.matches = matches;
        cand.family = families[fi];
        cand.indices = std::move(indices);
      }
    }
    if (cand.matches == 0) {
      cand.family.reset();
      cand.indices.assign(chis.size(), -1);
    }
    out[idx] = std::move(cand);
  });

  auto key = [](const ScanCandidate& c) { return std::make_tuple(-static_cast<long long>(c.matches), c.sign_defect); };
  std::sort(out.begin(), out.end(), [&](const ScanCandidate& x, const ScanCandidate& y) {
    if (key(x) != key(y)) return key(x) < key(y);
    const int sx = std::abs(x.a) + std::abs(x.b);
    const int sy = std::abs(y.a) + std::abs(y.b);
    if (sx != sy) return sx < sy;
    return std::make_pair(x.a, x.b) < std::make_pair(y.a, y.b);
  });
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i].rank = (i > 0 && key(out[i]) == key(out[i - 1])) ? out[i - 1].rank : i + 1;
  return out;
}

}  // namespace catfin

#endif  // CATFIN_PROPCHECK_HPP
