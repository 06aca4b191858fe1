#ifndef CATFIN_EXACTNUM_HPP
#define CATFIN_EXACTNUM_HPP

// Exact number systems: big integers, Laurent polynomials in q, and the
// cyclotomic field Q[q]/Phi_N(q) in which q is a primitive N-th root of unity.

#include <boost/multiprecision/gmp.hpp>

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace catfin {

using Integer = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

/// Integer-coefficient Laurent polynomial in q. Zero coefficients are never
/// stored, so two polynomials are equal iff their term maps are equal.
class LaurentPoly {
 public:
  using Exponent = std::int64_t;
  using TermMap = std::map<Exponent, Integer>;

  LaurentPoly() = default;
  LaurentPoly(std::initializer_list<std::pair<const Exponent, Integer>> terms) {
    for (const auto& [e, c] : terms) add_term(e, c);
  }

  static LaurentPoly constant(const Integer& c) { return monomial(0, c); }
  static LaurentPoly monomial(Exponent e, const Integer& c = 1) {
    LaurentPoly p;
    p.add_term(e, c);
    return p;
  }
  /// Dense coefficients, lowest exponent first.
  static LaurentPoly from_dense(const std::vector<Integer>& coeffs, Exponent lowest = 0) {
    LaurentPoly p;
    for (std::size_t i = 0; i < coeffs.size(); ++i)
      p.add_term(lowest + static_cast<Exponent>(i), coeffs[i]);
    return p;
  }

  const TermMap& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_monomial() const noexcept { return terms_.size() == 1; }
  std::size_t size() const noexcept { return terms_.size(); }

  Integer coefficient(Exponent e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Integer(0) : it->second;
  }
  Exponent min_exponent() const {
    if (is_zero()) throw std::domain_error("min_exponent of the zero polynomial");
    return terms_.begin()->first;
  }
  Exponent max_exponent() const {
    if (is_zero()) throw std::domain_error("max_exponent of the zero polynomial");
    return terms_.rbegin()->first;
  }

  /// this * q^k
  LaurentPoly shifted(Exponent k) const {
    LaurentPoly p;
    for (const auto& [e, c] : terms_) p.terms_.emplace_hint(p.terms_.end(), e + k, c);
    return p;
  }

  LaurentPoly& operator+=(const LaurentPoly& o) {
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }
  LaurentPoly& operator-=(const LaurentPoly& o) {
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
  }
  LaurentPoly& operator*=(const LaurentPoly& o) {
    *this = *this * o;
    return *this;
  }

  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
  friend LaurentPoly operator-(const LaurentPoly& a) {
    LaurentPoly p;
    for (const auto& [e, c] : a.terms_) p.terms_.emplace_hint(p.terms_.end(), e, -c);
    return p;
  }
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
    LaurentPoly p;
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) p.add_term(ea + eb, ca * cb);
    return p;
  }
  friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) { return a.terms_ == b.terms_; }

  /// Human-readable form, e.g. "1 + 2q - q^-1".
  std::string to_string() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : terms_) {
      Integer mag = c < 0 ? Integer(-c) : c;
      if (first) {
        if (c < 0) os << '-';
      } else {
        os << (c < 0 ? " - " : " + ");
      }
      first = false;
      if (e == 0) {
        os << mag;
        continue;
      }
      if (mag != 1) os << mag;
      os << 'q';
      if (e != 1) os << '^' << e;
    }
    return os.str();
  }

 private:
  void add_term(Exponent e, const Integer& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (inserted) return;
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }

  TermMap terms_;
};

/// Exact quotient num / den. Throws std::domain_error if den does not divide
/// num in Z[q, q^-1].
inline LaurentPoly divide_exact(const LaurentPoly& num, const LaurentPoly& den) {
  if (den.is_zero()) throw std::domain_error("division by the zero polynomial");
  if (num.is_zero()) return {};
  const auto shift = num.min_exponent() - den.min_exponent();
  LaurentPoly rem = num.shifted(-num.min_exponent());
  const LaurentPoly divisor = den.shifted(-den.min_exponent());
  const auto deg = divisor.max_exponent();
  const Integer& lead = divisor.terms().rbegin()->second;

  LaurentPoly quotient;
  while (!rem.is_zero() && rem.max_exponent() >= deg) {
    const auto top = rem.max_exponent();
    const Integer& c = rem.terms().rbegin()->second;
    if (c % lead != 0) throw std::domain_error("inexact polynomial division");
    LaurentPoly t = LaurentPoly::monomial(top - deg, c / lead);
    quotient += t;
    rem -= t * divisor;
  }
  if (!rem.is_zero()) throw std::domain_error("inexact polynomial division");
  return quotient.shifted(shift);
}

inline Integer eval_at_one(const LaurentPoly& p) {
  Integer sum = 0;
  for (const auto& [e, c] : p.terms()) sum += c;
  return sum;
}

/// Phi_N(q), obtained by dividing q^N - 1 by Phi_d for every proper divisor d.
inline LaurentPoly cyclotomic_polynomial(int order) {
  if (order <= 0) throw std::invalid_argument("cyclotomic_polynomial: order must be positive");
  LaurentPoly p = LaurentPoly::monomial(order) - LaurentPoly::constant(1);
  for (int d = 1; d < order; ++d)
    if (order % d == 0) p = divide_exact(p, cyclotomic_polynomial(d));
  return p;
}

/// Q[q]/Phi_N(q). Instances are shared and immutable.
class CyclotomicField {
 public:
  explicit CyclotomicField(int order) : order_(order) {
    const LaurentPoly phi = cyclotomic_polynomial(order);
    modulus_.assign(static_cast<std::size_t>(phi.max_exponent()) + 1, 0);
    for (const auto& [e, c] : phi.terms()) modulus_[static_cast<std::size_t>(e)] = static_cast<long>(c);
  }

  static std::shared_ptr<const CyclotomicField> get(int order) {
    if (order <= 0) throw std::invalid_argument("cyclotomic field order must be positive");
    static std::mutex mu;
    static std::map<int, std::shared_ptr<const CyclotomicField>> cache;
    std::lock_guard lock(mu);
    auto& slot = cache[order];
    if (!slot) slot = std::make_shared<const CyclotomicField>(order);
    return slot;
  }

  int order() const noexcept { return order_; }
  /// phi(N), the degree of Phi_N.
  std::size_t degree() const noexcept { return modulus_.size() - 1; }
  /// Dense Phi_N coefficients, lowest first; monic.
  const std::vector<long>& modulus() const noexcept { return modulus_; }

  /// Reduces a dense polynomial modulo Phi_N in place and trims it to degree().
  template <class Coeff>
  void reduce(std::vector<Coeff>& poly) const {
    const std::size_t deg = degree();
    for (std::size_t i = poly.size(); i-- > deg;) {
      if (poly[i] == 0) continue;
      const Coeff c = poly[i];
      for (std::size_t j = 0; j < deg; ++j)
        if (modulus_[j] != 0) poly[i - deg + j] -= c * modulus_[j];
      poly[i] = 0;
    }
    poly.resize(deg, Coeff(0));
  }

 private:
  int order_;
  std::vector<long> modulus_;
};

/// Element of Q[q]/Phi_N(q), always stored reduced (length phi(N)).
class CycloNumber {
 public:
  CycloNumber(std::shared_ptr<const CyclotomicField> field, std::vector<Rational> coeffs)
      : field_(std::move(field)), coeffs_(std::move(coeffs)) {
    field_->reduce(coeffs_);
  }

  static CycloNumber zero(int order) { return {CyclotomicField::get(order), {}}; }
  static CycloNumber one(int order) { return {CyclotomicField::get(order), {Rational(1)}}; }
  /// q^e for any integer e.
  static CycloNumber root_power(int order, std::int64_t e) {
    const auto r = static_cast<std::size_t>(((e % order) + order) % order);
    std::vector<Rational> c(r + 1, Rational(0));
    c[r] = 1;
    return {CyclotomicField::get(order), std::move(c)};
  }

  int order() const noexcept { return field_->order(); }
  const std::shared_ptr<const CyclotomicField>& field() const noexcept { return field_; }
  const std::vector<Rational>& coefficients() const noexcept { return coeffs_; }

  bool is_zero() const {
    for (const auto& c : coeffs_)
      if (c != 0) return false;
    return true;
  }

  CycloNumber& operator+=(const CycloNumber& o) {
    check_same_field(o);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
    return *this;
  }
  CycloNumber& operator-=(const CycloNumber& o) {
    check_same_field(o);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
    return *this;
  }
  CycloNumber& operator*=(const CycloNumber& o) {
    check_same_field(o);
    const std::size_t d = coeffs_.size();
    std::vector<Rational> prod(d == 0 ? 0 : 2 * d - 1, Rational(0));
    for (std::size_t i = 0; i < d; ++i) {
      if (coeffs_[i] == 0) continue;
      for (std::size_t j = 0; j < d; ++j)
        if (o.coeffs_[j] != 0) prod[i + j] += coeffs_[i] * o.coeffs_[j];
    }
    field_->reduce(prod);
    coeffs_ = std::move(prod);
    return *this;
  }

  friend CycloNumber operator+(CycloNumber a, const CycloNumber& b) { return a += b; }
  friend CycloNumber operator-(CycloNumber a, const CycloNumber& b) { return a -= b; }
  friend CycloNumber operator*(CycloNumber a, const CycloNumber& b) { return a *= b; }
  friend CycloNumber operator-(CycloNumber a) {
    for (auto& c : a.coeffs_) c = -c;
    return a;
  }
  friend bool operator==(const CycloNumber& a, const CycloNumber& b) {
    return a.order() == b.order() && a.coeffs_ == b.coeffs_;
  }

  std::string to_string() const {
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
      if (coeffs_[i] == 0) continue;
      if (!first) os << " + ";
      first = false;
      os << '(' << coeffs_[i] << ')';
      if (i > 0) os << "q^" << i;
    }
    if (first) os << '0';
    return os.str();
  }

 private:
  void check_same_field(const CycloNumber& o) const {
    if (o.order() != order())
      throw std::invalid_argument("CycloNumber: mixing different cyclotomic fields");
  }

  std::shared_ptr<const CyclotomicField> field_;
  std::vector<Rational> coeffs_;
};

inline bool is_zero(const CycloNumber& x) { return x.is_zero(); }

/// Image of p under q -> primitive N-th root of unity.
inline CycloNumber to_cyclo(const LaurentPoly& p, int order) {
  auto field = CyclotomicField::get(order);
  std::vector<Rational> dense(static_cast<std::size_t>(order), Rational(0));
  for (const auto& [e, c] : p.terms()) {
    const auto r = static_cast<std::size_t>(((e % order) + order) % order);
    dense[r] += Rational(c);
  }
  return {std::move(field), std::move(dense)};
}

namespace detail {

using RatPoly = std::vector<Rational>;

inline void trim(RatPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

// Quotient and remainder of a / b over Q; b nonzero and trimmed.
inline std::pair<RatPoly, RatPoly> divmod(RatPoly a, const RatPoly& b) {
  trim(a);
  if (a.size() < b.size()) return {{}, a};
  RatPoly q(a.size() - b.size() + 1, Rational(0));
  for (std::size_t top = a.size() - 1;; --top) {
    const std::size_t shift = top - (b.size() - 1);
    if (a[top] != 0) {
      const Rational t = a[top] / b.back();
      q[shift] = t;
      for (std::size_t j = 0; j < b.size(); ++j) a[shift + j] -= t * b[j];
    }
    if (shift == 0) break;
  }
  trim(a);
  trim(q);
  return {q, a};
}

inline RatPoly sub_mul(const RatPoly& a, const RatPoly& q, const RatPoly& b) {
  RatPoly out(std::max(a.size(), q.empty() || b.empty() ? 0 : q.size() + b.size() - 1), Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i) out[i] += a[i];
  for (std::size_t i = 0; i < q.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] -= q[i] * b[j];
  trim(out);
  return out;
}

}  // namespace detail

/// Multiplicative inverse via the extended Euclidean algorithm against Phi_N.
inline CycloNumber cyclo_inverse(const CycloNumber& x) {
  if (x.is_zero()) throw std::domain_error("cyclo_inverse: division by zero");
  const auto& field = x.field();
  detail::RatPoly r0(field->modulus().begin(), field->modulus().end());
  detail::RatPoly r1 = x.coefficients();
  detail::trim(r1);
  detail::RatPoly s0;
  detail::RatPoly s1{Rational(1)};
  while (!r1.empty()) {
    auto [q, rem] = detail::divmod(r0, r1);
    detail::RatPoly s2 = detail::sub_mul(s0, q, s1);
    r0 = std::move(r1);
    r1 = std::move(rem);
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  // r0 is the gcd; Phi_N is irreducible so it is a nonzero constant.
  if (r0.size() != 1) throw std::logic_error("cyclo_inverse: modulus is not irreducible");
  for (auto& c : s0) c /= r0[0];
  return {field, std::move(s0)};
}

inline CycloNumber inverse(const CycloNumber& x) { return cyclo_inverse(x); }

}  // namespace catfin

#endif  // CATFIN_EXACTNUM_HPP
