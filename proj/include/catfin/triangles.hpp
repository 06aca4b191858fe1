#ifndef CATFIN_TRIANGLES_HPP
#define CATFIN_TRIANGLES_HPP

// Pascal, q-Pascal and d-Pascal triangles. Rows are counted from 0.

#include "catfin/exactnum.hpp"

#include <stdexcept>
#include <vector>

namespace catfin {

inline Integer binomial(int n, int k) {
  if (n < 0) throw std::invalid_argument("binomial: n must be non-negative");
  if (k < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  Integer r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

inline Integer factorial(int n) {
  Integer r = 1;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

/// n! / (i! (i+k)! (n-2i-k)!): arrangements of i steps (2,0), i+k steps (0,2)
/// and the rest (1,1). Zero when any lower argument is negative.
inline Integer trinomial_coeff(int n, int i, int k) {
  if (n < 0) throw std::invalid_argument("trinomial_coeff: n must be non-negative");
  const int rest = n - 2 * i - k;
  if (i < 0 || i + k < 0 || rest < 0) return 0;
  return factorial(n) / (factorial(i) * factorial(i + k) * factorial(rest));
}

/// Character of the d-dimensional irreducible sl2 module:
/// q^{-(d-1)} + q^{-(d-3)} + ... + q^{d-1}.
inline LaurentPoly sl2_character(int d) {
  if (d < 1) throw std::invalid_argument("sl2_character: dimension must be positive");
  LaurentPoly chi;
  for (int e = -(d - 1); e <= d - 1; e += 2) chi += LaurentPoly::monomial(e);
  return chi;
}

/// Row r of the d-Pascal triangle, stored as the r-th power of the sl2
/// character so the exponents are the weights. Adjacent entries differ by 2
/// in exponent; column k sits at exponent 2k + parity().
struct TriangleRow {
  int arity = 2;
  int row = 0;
  LaurentPoly coeffs;

  int parity() const noexcept { return ((arity - 1) * row) % 2; }
  int min_column() const noexcept { return (-(arity - 1) * row - parity()) / 2; }
  int max_column() const noexcept { return ((arity - 1) * row - parity()) / 2; }
  Integer at_column(int k) const { return coeffs.coefficient(2 * static_cast<LaurentPoly::Exponent>(k) + parity()); }

  /// Entries from left to right.
  std::vector<Integer> entries() const {
    std::vector<Integer> out;
    for (int k = min_column(); k <= max_column(); ++k) out.push_back(at_column(k));
    return out;
  }
};

inline TriangleRow d_pascal_row(int d, int r) {
  if (d < 2) throw std::invalid_argument("d_pascal_row: arity must be at least 2");
  if (r < 0) throw std::invalid_argument("d_pascal_row: row must be non-negative");
  const LaurentPoly chi = sl2_character(d);
  LaurentPoly p = LaurentPoly::constant(1);
  for (int i = 0; i < r; ++i) p *= chi;
  return {d, r, std::move(p)};
}

/// (1 - q^n) / (1 - q) = 1 + q + ... + q^{n-1}
inline LaurentPoly q_integer(int n) {
  LaurentPoly p;
  for (int e = 0; e < n; ++e) p += LaurentPoly::monomial(e);
  return p;
}

/// Gaussian binomial (n!)_q / ((k!)_q ((n-k)!)_q); zero when k is out of range.
inline LaurentPoly q_binomial(int n, int k) {
  if (n < 0) throw std::invalid_argument("q_binomial: n must be non-negative");
  if (k < 0 || k > n) return {};
  if (k > n - k) k = n - k;
  // After step i the accumulator is [n-k+i choose i]_q, always a polynomial.
  LaurentPoly acc = LaurentPoly::constant(1);
  for (int i = 1; i <= k; ++i) acc = divide_exact(acc * q_integer(n - k + i), q_integer(i));
  return acc;
}

/// [2n, n]_q - q [2n, n+1]_q
inline LaurentPoly q_catalan(int n) {
  if (n < 0) throw std::invalid_argument("q_catalan: n must be non-negative");
  return q_binomial(2 * n, n) - q_binomial(2 * n, n + 1).shifted(1);
}

}  // namespace catfin

#endif  // CATFIN_TRIANGLES_HPP
