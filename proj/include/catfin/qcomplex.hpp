#ifndef CATFIN_QCOMPLEX_HPP
#define CATFIN_QCOMPLEX_HPP

// The quantum exterior algebra on x_1..x_M with x_i^2 = 0 and
// x_i x_j = q x_j x_i (i > j), the left multiplication sigma by
// x_1 + ... + x_M at q a primitive N-th root of unity, and the chain
// complexes whose differentials alternate between sigma^{s+1} and sigma^{m+1}.

#include "catfin/exactnum.hpp"
#include "catfin/linalg.hpp"
#include "catfin/pathlab.hpp"
#include "catfin/triangles.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace catfin {

/// Subset of {1..M} as a bit mask; element i lives in bit i-1.
using Subset = std::uint32_t;

inline constexpr int kMaxGenerators = 30;

inline std::vector<int> subset_elements(Subset s) {
  std::vector<int> out;
  for (int i = 1; s != 0; ++i, s >>= 1)
    if (s & 1U) out.push_back(i);
  return out;
}

/// Span of the squarefree monomials x_{i_1} ... x_{i_k}, i_1 < ... < i_k.
struct GradedPiece {
  int M = 0;
  int k = 0;
  std::vector<Subset> basis;  // lexicographic in the sorted element lists

  std::size_t dimension() const noexcept { return basis.size(); }
};

inline GradedPiece basis(int M, int k) {
  if (M < 0 || M > kMaxGenerators) throw std::invalid_argument("basis: M out of range");
  GradedPiece piece{M, k, {}};
  if (k < 0 || k > M) return piece;
  std::vector<int> idx(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) idx[static_cast<std::size_t>(i)] = i + 1;
  while (true) {
    Subset s = 0;
    for (int e : idx) s |= Subset{1} << (e - 1);
    piece.basis.push_back(s);
    int pos = k - 1;
    while (pos >= 0 && idx[static_cast<std::size_t>(pos)] == M - k + pos + 1) --pos;
    if (pos < 0) break;
    ++idx[static_cast<std::size_t>(pos)];
    for (int j = pos + 1; j < k; ++j) idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
  }
  return piece;
}

struct MatrixBudget {
  std::size_t max_dimension = 13000;      // largest graded piece that may be built
  std::size_t max_rank_dimension = 1000;  // largest side handed to elimination
};

namespace detail {

inline void check_piece_budget(int M, int k, const MatrixBudget& budget) {
  const Integer dim = binomial(M, std::clamp(k, 0, M));
  if (dim > budget.max_dimension)
    throw BudgetExceeded("graded piece dimension", static_cast<std::uint64_t>(dim), budget.max_dimension);
}

inline std::unordered_map<Subset, std::size_t> index_map(const GradedPiece& p) {
  std::unordered_map<Subset, std::size_t> out;
  out.reserve(p.basis.size());
  for (std::size_t i = 0; i < p.basis.size(); ++i) out.emplace(p.basis[i], i);
  return out;
}

}  // namespace detail

/// Matrix of sigma from degree k to degree k+1. Left-multiplying x_S by x_i
/// (i not in S) commutes x_i past every smaller index of S, so the entry at
/// (S u {i}, S) is q^{#{j in S : j < i}}; x_i x_i = 0 kills i in S.
inline SparseMatrix<CycloNumber> sigma_matrix(int M, int k, int order, const MatrixBudget& budget = {}) {
  if (k < 0 || k >= M) throw std::invalid_argument("sigma_matrix: need 0 <= k < M");
  if (order < 1) throw std::invalid_argument("sigma_matrix: order must be positive");
  detail::check_piece_budget(M, k, budget);
  detail::check_piece_budget(M, k + 1, budget);
  const GradedPiece src = basis(M, k);
  const GradedPiece dst = basis(M, k + 1);
  const auto dst_index = detail::index_map(dst);
  SparseMatrix<CycloNumber> out(dst.dimension(), src.dimension());
  for (std::size_t col = 0; col < src.basis.size(); ++col) {
    const Subset s = src.basis[col];
    std::vector<SparseMatrix<CycloNumber>::Entry> entries;
    for (int i = 1; i <= M; ++i) {
      const Subset bit = Subset{1} << (i - 1);
      if (s & bit) continue;
      const int below = std::popcount(s & (bit - 1));
      entries.emplace_back(dst_index.at(s | bit), CycloNumber::root_power(order, below));
    }
    std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    out.set_column(col, std::move(entries));
  }
  return out;
}

/// Memoized sigma^k starting from a given degree, for one (M, N). Not
/// thread-safe; give each worker its own instance.
class SigmaPowers {
 public:
  SigmaPowers(int M, int order, MatrixBudget budget = {}) : M_(M), order_(order), budget_(budget) {}

  int generators() const noexcept { return M_; }
  int order() const noexcept { return order_; }

  /// sigma^k : degree `from` -> degree `from + k`; requires from + k <= M.
  const SparseMatrix<CycloNumber>& power(int from, int k) {
    if (k < 1 || from < 0 || from + k > M_) throw std::invalid_argument("SigmaPowers: degree out of range");
    const auto key = std::make_pair(from, k);
    if (auto it = cache_.find(key); it != cache_.end()) return it->second;
    SparseMatrix<CycloNumber> m = k == 1 ? sigma_matrix(M_, from, order_, budget_)
                                         : multiply(power(from + k - 1, 1), power(from, k - 1));
    return cache_.emplace(key, std::move(m)).first->second;
  }

 private:
  int M_;
  int order_;
  MatrixBudget budget_;
  std::map<std::pair<int, int>, SparseMatrix<CycloNumber>> cache_;
};

/// True iff sigma^N vanishes from every starting degree.
inline bool check_nilpotent(int M, int order, const MatrixBudget& budget = {}) {
  if (M < 1 || order < 2) throw std::invalid_argument("check_nilpotent: need M >= 1 and N >= 2");
  SigmaPowers powers(M, order, budget);
  for (int from = 0; from + order <= M; ++from)
    if (!powers.power(from, order).is_zero()) return false;
  return true;
}

struct ComplexParams {
  int M = 0;  // generators
  int c = 0;  // degree of the piece at index 0
  int m = 0;
  int s = 0;
  int order() const noexcept { return m + s + 2; }
};

/// Degree of the piece at complex index i: even indices step by N from c,
/// odd indices sit s+1 above the even index below them.
inline int complex_degree(int index, const ComplexParams& p) {
  const int period = p.order();
  if (index >= 0) {
    const int j = index / 2;
    return index % 2 == 0 ? p.c + j * period : p.c + j * period + p.s + 1;
  }
  const int k = -index;
  if (k % 2 == 0) return p.c - (k / 2) * period;
  const int j = (k + 1) / 2;
  return p.c - (j - 1) * period - (p.m + 1);
}

struct ComplexPiece {
  int index = 0;
  int degree = 0;
  GradedPiece space;
};

/// A finite complex: the pieces whose degree lies in [0, M], indexed
/// contiguously. Differentials are computed on demand, never stored.
class ChainComplex {
 public:
  ChainComplex(ComplexParams params, std::vector<ComplexPiece> pieces)
      : params_(params), pieces_(std::move(pieces)) {}

  const ComplexParams& params() const noexcept { return params_; }
  int order() const noexcept { return params_.order(); }
  const std::vector<ComplexPiece>& pieces() const noexcept { return pieces_; }
  int first_index() const noexcept { return pieces_.front().index; }
  int last_index() const noexcept { return pieces_.back().index; }

  const ComplexPiece& piece(int index) const {
    if (index < first_index() || index > last_index()) throw std::out_of_range("ChainComplex: index out of range");
    return pieces_[static_cast<std::size_t>(index - first_index())];
  }

  /// sigma exponent of the differential from index i to i+1.
  int differential_exponent(int index) const { return index % 2 == 0 ? params_.s + 1 : params_.m + 1; }

  /// Differential index -> index+1 as a composed sigma power.
  SparseMatrix<CycloNumber> differential(int index, SigmaPowers& powers) const {
    if (index < first_index() || index >= last_index())
      throw std::out_of_range("ChainComplex: no differential at this index");
    const int from = piece(index).degree;
    const int exponent = piece(index + 1).degree - from;
    if (exponent != differential_exponent(index)) throw std::logic_error("ChainComplex: degree law violated");
    return powers.power(from, exponent);
  }

 private:
  ComplexParams params_;
  std::vector<ComplexPiece> pieces_;
};

inline ChainComplex build_complex(int M, int c, int m, int s, const MatrixBudget& budget = {}) {
  if (M < 0 || M > kMaxGenerators) throw std::invalid_argument("build_complex: M out of range");
  if (c < 0 || c > M) throw std::invalid_argument("build_complex: need 0 <= c <= M");
  if (m < 0 || s < 0) throw std::invalid_argument("build_complex: m and s must be non-negative");
  const ComplexParams p{M, c, m, s};
  int lo = 0;
  while (complex_degree(lo - 1, p) >= 0) --lo;
  int hi = 0;
  while (complex_degree(hi + 1, p) <= M) ++hi;
  std::vector<ComplexPiece> pieces;
  for (int i = lo; i <= hi; ++i) {
    const int deg = complex_degree(i, p);
    detail::check_piece_budget(M, deg, budget);
    pieces.push_back({i, deg, basis(M, deg)});
  }
  return {p, std::move(pieces)};
}

inline bool check_d_squared(const ChainComplex& cx, SigmaPowers& powers) {
  for (int i = cx.first_index(); i + 1 < cx.last_index(); ++i)
    if (!multiply(cx.differential(i + 1, powers), cx.differential(i, powers)).is_zero()) return false;
  return true;
}

inline bool check_d_squared(const ChainComplex& cx, const MatrixBudget& budget = {}) {
  SigmaPowers powers(cx.params().M, cx.order(), budget);
  return check_d_squared(cx, powers);
}

/// Sum of (-1)^i dim C_i.
inline Integer euler_char(const ChainComplex& cx) {
  Integer chi = 0;
  for (const auto& p : cx.pieces()) {
    const Integer dim = static_cast<unsigned long>(p.space.dimension());
    chi += (p.index % 2 == 0) ? dim : Integer(-dim);
  }
  return chi;
}

enum class RankMethod {
  modular_certified,  // F_p lower bounds closed by rank(d_{i-1}) + rank(d_i) <= dim C_i
  exact,              // Gaussian elimination over Q(zeta_N)
};

struct HomologyEntry {
  int index = 0;
  int degree = 0;
  std::size_t dimension = 0;
  std::size_t rank_in = 0;   // rank of the differential arriving here
  std::size_t rank_out = 0;  // rank of the differential leaving
  std::size_t homology() const noexcept { return dimension - rank_in - rank_out; }
};

struct HomologyResult {
  std::vector<HomologyEntry> entries;
  RankMethod method = RankMethod::modular_certified;
  std::vector<std::uint64_t> primes;  // primes used for modular bounds
  std::size_t exact_fallbacks = 0;    // differentials that needed exact elimination
};

namespace detail {

inline std::size_t exact_rank(const SparseMatrix<CycloNumber>& d, int order, const MatrixBudget& budget) {
  const std::size_t side = std::max(d.rows(), d.cols());
  if (side > budget.max_rank_dimension) throw BudgetExceeded("exact rank", side, budget.max_rank_dimension);
  return rank(d, CycloNumber::zero(order));
}

}  // namespace detail

/// Homology ranks over Q(zeta_N). The default route bounds every rank from
/// below by reducing at primes p = 1 (mod N); since d^2 = 0 forces
/// rank(d_{i-1}) + rank(d_i) <= dim C_i, a lower bound that meets the implied
/// upper bound is the exact rank. Anything left open is eliminated exactly.
inline HomologyResult homology_ranks(const ChainComplex& cx, RankMethod method = RankMethod::modular_certified,
                                     const MatrixBudget& budget = {}) {
  const int order = cx.order();
  SigmaPowers powers(cx.params().M, order, budget);
  std::vector<SparseMatrix<CycloNumber>> ds;
  for (int i = cx.first_index(); i < cx.last_index(); ++i) ds.push_back(cx.differential(i, powers));
  std::vector<std::size_t> dims;
  for (const auto& p : cx.pieces()) dims.push_back(p.space.dimension());

  HomologyResult result;
  result.method = method;
  std::vector<std::size_t> ranks(ds.size(), 0);
  std::vector<bool> known(ds.size(), false);

  if (method == RankMethod::modular_certified) {
    for (std::size_t t = 0; t + 1 < ds.size(); ++t)
      if (!multiply(ds[t + 1], ds[t]).is_zero()) throw std::logic_error("homology_ranks: d^2 != 0");
    for (const auto& d : ds) {
      const std::size_t side = std::max(d.rows(), d.cols());
      if (side > budget.max_rank_dimension) throw BudgetExceeded("modular rank", side, budget.max_rank_dimension);
    }
    auto rank_at = [&](std::ptrdiff_t t) -> std::size_t {
      return t < 0 || t >= static_cast<std::ptrdiff_t>(ds.size()) ? 0 : ranks[static_cast<std::size_t>(t)];
    };
    for (const auto& ring : modp::primes_with_root_of_unity(order, 3)) {
      result.primes.push_back(ring.prime);
      for (std::size_t t = 0; t < ds.size(); ++t)
        if (auto r = modp::rank(ds[t], ring)) ranks[t] = std::max(ranks[t], *r);
      bool all = true;
      for (std::size_t t = 0; t < ds.size(); ++t) {
        const auto ti = static_cast<std::ptrdiff_t>(t);
        const std::size_t upper = std::min(dims[t] - rank_at(ti - 1), dims[t + 1] - rank_at(ti + 1));
        known[t] = ranks[t] == upper;
        all = all && known[t];
      }
      if (all) break;
    }
  }
  for (std::size_t t = 0; t < ds.size(); ++t) {
    if (known[t]) continue;
    ranks[t] = detail::exact_rank(ds[t], order, budget);
    if (method == RankMethod::modular_certified) ++result.exact_fallbacks;
  }

  for (std::size_t k = 0; k < dims.size(); ++k) {
    const auto& p = cx.pieces()[k];
    HomologyEntry e{p.index, p.degree, dims[k], k > 0 ? ranks[k - 1] : 0, k < ds.size() ? ranks[k] : 0};
    result.entries.push_back(e);
  }
  return result;
}

/// Sum over k-subsets of q^{sum_j (i_j - j)}.
inline LaurentPoly graded_qdim(int M, int k) {
  if (k < 0 || k > M) throw std::invalid_argument("graded_qdim: need 0 <= k <= M");
  std::map<LaurentPoly::Exponent, Integer> counts;
  for (Subset s : basis(M, k).basis) {
    LaurentPoly::Exponent w = 0;
    LaurentPoly::Exponent j = 1;
    for (int i : subset_elements(s)) w += i - j++;
    counts[w] += 1;
  }
  LaurentPoly p;
  for (const auto& [e, c] : counts) p += LaurentPoly::monomial(e, c);
  return p;
}

/// f(i) = (A i^2 + B i) / 2, integer-valued iff A + B is even.
class ExponentFn {
 public:
  ExponentFn(std::string label, int a, int b) : label_(std::move(label)), a_(a), b_(b) {
    if ((a + b) % 2 != 0) throw std::invalid_argument("ExponentFn: (A i^2 + B i)/2 is not integer-valued");
  }
  static ExponentFn zero() { return {"zero", 0, 0}; }

  const std::string& label() const noexcept { return label_; }
  int a() const noexcept { return a_; }
  int b() const noexcept { return b_; }
  LaurentPoly::Exponent operator()(LaurentPoly::Exponent i) const { return (a_ * i * i + b_ * i) / 2; }

 private:
  std::string label_;
  int a_;
  int b_;
};

/// One piece's contribution to the modified Euler characteristic, before weighting.
struct QChiTerm {
  int index = 0;
  int degree = 0;
  LaurentPoly qdim;
};

/// The (index, q-dimension) pairs of build_complex(M, c, m, s), without matrices.
/// q-dimensions come from q_binomial, which equals graded_qdim on every piece.
inline std::vector<QChiTerm> qchi_terms(int M, int c, int m, int s) {
  if (M < 0 || c < 0 || c > M || m < 0 || s < 0) throw std::invalid_argument("qchi_terms: bad parameters");
  const ComplexParams p{M, c, m, s};
  int lo = 0;
  while (complex_degree(lo - 1, p) >= 0) --lo;
  std::vector<QChiTerm> out;
  for (int i = lo; complex_degree(i, p) <= M; ++i) {
    const int deg = complex_degree(i, p);
    out.push_back({i, deg, q_binomial(M, deg)});
  }
  return out;
}

inline LaurentPoly combine_qchi(const std::vector<QChiTerm>& terms, const ExponentFn& f) {
  LaurentPoly chi;
  for (const auto& t : terms) {
    const LaurentPoly w = t.qdim.shifted(f(t.index));
    if (t.index % 2 == 0)
      chi += w;
    else
      chi -= w;
  }
  return chi;
}

/// sum_i (-1)^i q^{f(i)} qdim C_i, as an exact Laurent polynomial.
inline LaurentPoly modified_euler_char(int M, int c, int m, int s, const ExponentFn& f) {
  return combine_qchi(qchi_terms(M, c, m, s), f);
}

enum class FibVariant { F, Fprime };

/// F_n = F_{n-1} + q^{n-1} F_{n-2}; F'_n = F'_{n-1} + q^{n-2} F'_{n-2}; both start 0, 1.
inline LaurentPoly q_fibonacci(int n, FibVariant variant) {
  if (n < 0) throw std::invalid_argument("q_fibonacci: n must be non-negative");
  LaurentPoly prev;                              // index 0
  LaurentPoly cur = LaurentPoly::constant(1);    // index 1
  if (n == 0) return prev;
  const int lag = variant == FibVariant::F ? 1 : 2;
  for (int k = 2; k <= n; ++k) {
    LaurentPoly next = cur + prev.shifted(k - lag);
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

/// Sparse triplet text: a header line, then "row col c_0 ... c_{phi(N)-1}"
/// per nonzero entry, 0-based, coefficients of 1, q, q^2, ... as rationals.
inline std::string to_triplets(const SparseMatrix<CycloNumber>& m, int order) {
  std::ostringstream os;
  os << "%catfin-triplets rows=" << m.rows() << " cols=" << m.cols() << " nnz=" << m.nonzeros()
     << " order=" << order << '\n';
  for (std::size_t j = 0; j < m.cols(); ++j) {
    for (const auto& [i, v] : m.column(j)) {
      os << i << ' ' << j;
      const auto& c = v.coefficients();
      const std::size_t width = std::max(c.size(), v.field()->degree());
      for (std::size_t k = 0; k < width; ++k) os << ' ' << (k < c.size() ? c[k] : Rational(0));
      os << '\n';
    }
  }
  return os.str();
}

}  // namespace catfin

#endif  // CATFIN_QCOMPLEX_HPP
