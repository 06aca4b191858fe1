#ifndef CATFIN_LINALG_HPP
#define CATFIN_LINALG_HPP

// Sparse matrices over exact fields, Gaussian-elimination rank, and the
// prime-field reduction used to bound ranks over Q(zeta_N) from below.

#include "catfin/exactnum.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace catfin {

inline bool is_zero(const Rational& x) { return x == 0; }
inline Rational inverse(const Rational& x) {
  if (x == 0) throw std::domain_error("inverse of zero");
  return 1 / x;
}

/// Column-major sparse matrix; each column holds (row, value) pairs sorted by
/// row with no explicit zeros.
template <class T>
class SparseMatrix {
 public:
  using Entry = std::pair<std::size_t, T>;

  SparseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), columns_(cols) {}

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return columns_.size(); }
  const std::vector<Entry>& column(std::size_t j) const { return columns_.at(j); }

  void set_column(std::size_t j, std::vector<Entry> entries) {
    for (const auto& [i, v] : entries)
      if (i >= rows_) throw std::out_of_range("SparseMatrix: row index out of range");
    columns_.at(j) = std::move(entries);
  }

  std::size_t nonzeros() const {
    std::size_t n = 0;
    for (const auto& c : columns_) n += c.size();
    return n;
  }
  bool is_zero() const {
    for (const auto& c : columns_)
      if (!c.empty()) return false;
    return true;
  }

 private:
  std::size_t rows_;
  std::vector<std::vector<Entry>> columns_;
};

/// a * b
template <class T>
SparseMatrix<T> multiply(const SparseMatrix<T>& a, const SparseMatrix<T>& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("multiply: dimension mismatch");
  SparseMatrix<T> out(a.rows(), b.cols());
  for (std::size_t j = 0; j < b.cols(); ++j) {
    std::map<std::size_t, T> acc;
    for (const auto& [k, bv] : b.column(j)) {
      for (const auto& [i, av] : a.column(k)) {
        T term = av * bv;
        auto it = acc.find(i);
        if (it == acc.end())
          acc.emplace(i, std::move(term));
        else
          it->second += term;
      }
    }
    std::vector<typename SparseMatrix<T>::Entry> col;
    for (auto& [i, v] : acc)
      if (!is_zero(v)) col.emplace_back(i, std::move(v));
    out.set_column(j, std::move(col));
  }
  return out;
}

/// Rank by Gaussian elimination over any exact field whose element type
/// provides is_zero() and inverse() (found by ADL or declared above).
template <class T>
std::size_t rank(const SparseMatrix<T>& m, const T& zero) {
  std::vector<std::vector<T>> rows(m.rows(), std::vector<T>(m.cols(), zero));
  for (std::size_t j = 0; j < m.cols(); ++j)
    for (const auto& [i, v] : m.column(j)) rows[i][j] = v;

  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < rows.size(); ++c) {
    std::size_t pivot = r;
    while (pivot < rows.size() && is_zero(rows[pivot][c])) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[r], rows[pivot]);
    const T inv = inverse(rows[r][c]);
    for (std::size_t i = r + 1; i < rows.size(); ++i) {
      if (is_zero(rows[i][c])) continue;
      const T factor = rows[i][c] * inv;
      for (std::size_t k = c; k < m.cols(); ++k)
        if (!is_zero(rows[r][k])) rows[i][k] -= factor * rows[r][k];
    }
    ++r;
  }
  return r;
}

namespace modp {

inline std::uint64_t mul(std::uint64_t a, std::uint64_t b, std::uint64_t p) { return a * b % p; }

inline std::uint64_t pow(std::uint64_t base, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1 % p;
  base %= p;
  while (e > 0) {
    if (e & 1) r = mul(r, base, p);
    base = mul(base, base, p);
    e >>= 1;
  }
  return r;
}

inline std::uint64_t inv(std::uint64_t a, std::uint64_t p) { return pow(a, p - 2, p); }

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

inline std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d != 0) continue;
    out.push_back(d);
    while (n % d == 0) n /= d;
  }
  if (n > 1) out.push_back(n);
  return out;
}

/// A prime p = 1 (mod N) together with an element of multiplicative order
/// exactly N, i.e. the image of q under Z[zeta_N] -> F_p.
struct RootOfUnityPrime {
  std::uint64_t prime;
  std::uint64_t root;
};

/// The first `count` primes p < 2^31 with p = 1 (mod order), searching
/// downward from 2^31. Products of two residues fit in 64 bits.
inline std::vector<RootOfUnityPrime> primes_with_root_of_unity(int order, std::size_t count) {
  if (order < 1) throw std::invalid_argument("order must be positive");
  const auto n = static_cast<std::uint64_t>(order);
  const auto factors = prime_factors(n);
  std::vector<RootOfUnityPrime> out;
  std::uint64_t k = ((std::uint64_t{1} << 31) - 2) / n;
  for (; k > 0 && out.size() < count; --k) {
    const std::uint64_t p = k * n + 1;
    if (!is_prime(p)) continue;
    for (std::uint64_t g = 2; g < p; ++g) {
      const std::uint64_t w = pow(g, (p - 1) / n, p);
      bool primitive = true;
      for (auto r : factors)
        if (pow(w, n / r, p) == 1) primitive = false;
      if (primitive) {
        out.push_back({p, w});
        break;
      }
    }
  }
  return out;
}

/// Image of a rational under Z_(p) -> F_p; nullopt if p divides the denominator.
inline std::optional<std::uint64_t> reduce(const Rational& x, std::uint64_t p) {
  using boost::multiprecision::denominator;
  using boost::multiprecision::numerator;
  const Integer pp = p;
  Integer num = numerator(x) % pp;
  if (num < 0) num += pp;
  const Integer den = denominator(x) % pp;
  if (den == 0) return std::nullopt;
  return mul(static_cast<std::uint64_t>(num), inv(static_cast<std::uint64_t>(den), p), p);
}

/// Image of a cyclotomic number in F_p when q is sent to `ring.root`.
inline std::optional<std::uint64_t> reduce(const CycloNumber& x, const RootOfUnityPrime& ring) {
  std::uint64_t acc = 0;
  std::uint64_t power = 1;
  for (const auto& c : x.coefficients()) {
    if (c != 0) {
      auto r = reduce(c, ring.prime);
      if (!r) return std::nullopt;
      acc = (acc + mul(*r, power, ring.prime)) % ring.prime;
    }
    power = mul(power, ring.root, ring.prime);
  }
  return acc;
}

/// Rank of a dense row-major matrix over F_p. Destroys its input.
inline std::size_t rank(std::vector<std::uint64_t>& a, std::size_t rows, std::size_t cols,
                        std::uint64_t p) {
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t pivot = r;
    while (pivot < rows && a[pivot * cols + c] == 0) ++pivot;
    if (pivot == rows) continue;
    if (pivot != r)
      for (std::size_t k = c; k < cols; ++k) std::swap(a[r * cols + k], a[pivot * cols + k]);
    const std::uint64_t inv_pivot = inv(a[r * cols + c], p);
    const std::uint64_t* prow = &a[r * cols];
    for (std::size_t i = r + 1; i < rows; ++i) {
      std::uint64_t* row = &a[i * cols];
      if (row[c] == 0) continue;
      const std::uint64_t f = p - mul(row[c], inv_pivot, p);
      for (std::size_t k = c; k < cols; ++k)
        if (prow[k] != 0) row[k] = (row[k] + f * prow[k]) % p;
    }
    ++r;
  }
  return r;
}

/// Rank over F_p of a cyclotomic matrix reduced at `ring`; nullopt if some
/// entry is not p-integral.
inline std::optional<std::size_t> rank(const SparseMatrix<CycloNumber>& m, const RootOfUnityPrime& ring) {
  std::vector<std::uint64_t> dense(m.rows() * m.cols(), 0);
  for (std::size_t j = 0; j < m.cols(); ++j) {
    for (const auto& [i, v] : m.column(j)) {
      auto r = reduce(v, ring);
      if (!r) return std::nullopt;
      dense[i * m.cols() + j] = *r;
    }
  }
  return rank(dense, m.rows(), m.cols(), ring.prime);
}

}  // namespace modp

}  // namespace catfin

#endif  // CATFIN_LINALG_HPP
