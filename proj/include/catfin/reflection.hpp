#ifndef CATFIN_REFLECTION_HPP
#define CATFIN_REFLECTION_HPP

// Reflection-principle alternating sums on Pascal and d-Pascal rows.
//
// With period N = m + s + 2 and base column c, the terms are
//   i = 0        : +T(c)                       (A_0 = B_0, counted once)
//   i = 2j,  j>0 : +T(c + jN)  and  +T(c - jN)
//   i = 2j+1     : -T(c + jN + s + 1)  and  -T(c - jN - m - 1)
// A-side columns lie to the right of c, B-side columns to the left.

#include "catfin/exactnum.hpp"
#include "catfin/triangles.hpp"

#include <functional>
#include <stdexcept>
#include <vector>

namespace catfin {

enum class Side { center, a, b };

struct AltSumTerm {
  int index = 0;  // i in (-1)^i (|A_i| + |B_i|)
  Side side = Side::center;
  int column = 0;  // centered column; for bounded_formula the offset from n
  int sign = 1;
  Integer magnitude;
};

struct AltSumResult {
  std::vector<AltSumTerm> terms;
  Integer value;
};

struct AltSumSpec {
  int arity = 2;
  int row = 0;
  int base_col = 0;
  int m = 0;
  int s = 0;
  int period() const noexcept { return m + s + 2; }
};

namespace detail {

// Walks the A/B term pattern outward until both sides leave [lo, hi].
inline AltSumResult reflection_terms(int c, int m, int s, int lo, int hi,
                                     const std::function<Integer(int)>& entry) {
  if (m < 0 || s < 0) throw std::invalid_argument("bounds m and s must be non-negative");
  const int period = m + s + 2;
  AltSumResult out;
  auto add = [&](int index, Side side, int column) {
    if (column < lo || column > hi) return;
    const int sign = index % 2 == 0 ? 1 : -1;
    Integer mag = entry(column);
    out.value += sign * mag;
    out.terms.push_back({index, side, column, sign, std::move(mag)});
  };
  add(0, Side::center, c);
  for (int i = 1;; ++i) {
    const int j = i / 2;
    const int a_col = i % 2 == 0 ? c + j * period : c + j * period + s + 1;
    const int b_col = i % 2 == 0 ? c - j * period : c - j * period - m - 1;
    if (a_col > hi && b_col < lo) break;
    add(i, Side::a, a_col);
    add(i, Side::b, b_col);
  }
  return out;
}

}  // namespace detail

/// C(2n, n) - C(2n, n-1)
inline Integer catalan_formula(int n) {
  if (n < 0) throw std::invalid_argument("catalan_formula: n must be non-negative");
  return binomial(2 * n, n) - binomial(2 * n, n - 1);
}

/// Term table of the two-barrier reflection sum for paths in -s <= y-x <= m.
inline AltSumResult bounded_terms(int n, int m, int s) {
  if (n < 0) throw std::invalid_argument("bounded_formula: n must be non-negative");
  return detail::reflection_terms(0, m, s, -n, n, [n](int offset) { return binomial(2 * n, n + offset); });
}

/// Number of N/E paths (0,0) -> (n,n) with -s <= y - x <= m.
inline Integer bounded_formula(int n, int m, int s) { return bounded_terms(n, m, s).value; }

/// The same alternating pattern on row `row` of the d-Pascal triangle.
inline AltSumResult altsum_row(const AltSumSpec& spec) {
  if (spec.row < 0) throw std::invalid_argument("altsum_row: row must be non-negative");
  const TriangleRow row = d_pascal_row(spec.arity, spec.row);
  return detail::reflection_terms(spec.base_col, spec.m, spec.s, row.min_column(), row.max_column(),
                                  [&row](int k) { return row.at_column(k); });
}

/// altsum_row over a precomputed row, for sweeps that reuse rows.
inline Integer altsum_value(const TriangleRow& row, int base_col, int m, int s) {
  return detail::reflection_terms(base_col, m, s, row.min_column(), row.max_column(),
                                  [&row](int k) { return row.at_column(k); })
      .value;
}

}  // namespace catfin

#endif  // CATFIN_REFLECTION_HPP
