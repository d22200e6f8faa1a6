#pragma once

// Polynomials in q with integer coefficients, cyclotomic polynomials and
// cyclotomic exponent vectors of q-binomial quotients.
//
// The canonical form of a quotient of q-integers is its exponent vector
// d -> e_d over the cyclotomic polynomials Phi_d. Since every Phi_d is
// irreducible over Q, the quotient is a polynomial exactly when all e_d are
// non-negative, which needs only floor arithmetic. Coefficients are formed
// lazily, when a coefficient-level predicate is asked for.

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "divcert/arith.hpp"
#include "divcert/limits.hpp"

namespace divcert {

// Dense polynomial, coefficient of q^i at index i. Trailing zeros are
// trimmed so the zero polynomial is empty.
class IntPoly {
 public:
  IntPoly() = default;
  explicit IntPoly(std::vector<Int> coeffs);
  IntPoly(std::initializer_list<long> coeffs);

  static IntPoly monomial(std::uint64_t degree, const Int& coeff = 1);
  // 1 - q^m
  static IntPoly one_minus_q_pow(std::uint64_t m);

  bool is_zero() const { return coeffs_.empty(); }
  // Degree of the zero polynomial is reported as -1.
  std::int64_t degree() const { return static_cast<std::int64_t>(coeffs_.size()) - 1; }
  const std::vector<Int>& coeffs() const { return coeffs_; }
  Int coeff(std::uint64_t i) const { return i < coeffs_.size() ? coeffs_[i] : Int(0); }

  Int eval(const Int& q) const;
  Int eval_at_one() const;

  IntPoly& operator+=(const IntPoly& rhs);
  IntPoly& operator-=(const IntPoly& rhs);
  friend IntPoly operator+(IntPoly lhs, const IntPoly& rhs) { return lhs += rhs; }
  friend IntPoly operator-(IntPoly lhs, const IntPoly& rhs) { return lhs -= rhs; }
  friend IntPoly operator*(const IntPoly& lhs, const IntPoly& rhs);
  IntPoly shifted(std::uint64_t by) const;
  // *this += q^by * rhs, without a temporary.
  IntPoly& add_shifted(const IntPoly& rhs, std::uint64_t by);

  // Long division by a divisor whose leading coefficient is +1 or -1, so
  // quotient and remainder stay integral.
  std::pair<IntPoly, IntPoly> divmod(const IntPoly& divisor) const;

  friend bool operator==(const IntPoly&, const IntPoly&) = default;

 private:
  void trim();
  std::vector<Int> coeffs_;
};

// sign * prod_d Phi_d(q)^{e_d}, zero exponents never stored.
struct CycloFactorization {
  std::map<std::uint64_t, std::int64_t> exponents;
  int sign = 1;

  void add(std::uint64_t d, std::int64_t e);
  std::int64_t exponent(std::uint64_t d) const;
  // Sum of e_d * phi(d): the degree of the represented polynomial when it
  // is one.
  std::int64_t degree() const;

  friend bool operator==(const CycloFactorization&, const CycloFactorization&) = default;
};

// prod_i (1 - q^{m_i}) / prod_j (1 - q^{n_j}) * [binom_m, binom_k]_q.
// Numerator and denominator carry the same number of factors, so the
// (1 - q) signs cancel and the represented sign is +1.
class QuotientExpr {
 public:
  QuotientExpr(std::vector<std::uint64_t> numerator_ms,
               std::vector<std::uint64_t> denominator_ns, std::uint64_t binom_m,
               std::uint64_t binom_k);

  const std::vector<std::uint64_t>& numerator_ms() const { return numerator_ms_; }
  const std::vector<std::uint64_t>& denominator_ns() const { return denominator_ns_; }
  std::uint64_t binom_m() const { return binom_m_; }
  std::uint64_t binom_k() const { return binom_k_; }

  // Value at q = 1: (prod m_i / prod n_j) * binom(binom_m, binom_k).
  Rational value_at_one(const Limits& limits = default_limits()) const;

 private:
  std::vector<std::uint64_t> numerator_ms_;
  std::vector<std::uint64_t> denominator_ns_;
  std::uint64_t binom_m_;
  std::uint64_t binom_k_;
};

// Phi_d, by exact division of q^d - 1 by the lower Phi_e, e | d (memoized).
const IntPoly& cyclotomic(std::uint64_t d);

CycloFactorization qbinom_factorization(std::uint64_t m, std::uint64_t k);
CycloFactorization expr_factorization(const QuotientExpr& expr);
bool is_polynomial(const CycloFactorization& f);

// Multiplies out a polynomial exponent vector. Rejects negative exponents
// and degrees above limits.degree.
IntPoly expand(const CycloFactorization& f, const Limits& limits = default_limits());

// Gaussian polynomial by the q-Pascal recurrence.
IntPoly qbinom_poly(std::uint64_t m, std::uint64_t k, const Limits& limits = default_limits());

bool is_reciprocal(const IntPoly& p);
bool is_unimodal(const IntPoly& p);

struct NonnegReport {
  bool nonneg = true;
  std::vector<std::pair<std::uint64_t, Int>> negatives;
};
NonnegReport is_nonneg(const IntPoly& p);

// (1 - q^m)/(1 - q^n) * P by exact division; true iff the quotient has no
// negative coefficient. Throws DomainError when the division is not exact.
bool lemma_rsw_check(const IntPoly& p, std::uint64_t m, std::uint64_t n);

// Polynomiality of a quotient expression decided by long division of the
// multiplied-out numerator by the multiplied-out denominator.
bool is_polynomial_by_division(const QuotientExpr& expr,
                               const Limits& limits = default_limits());

std::uint64_t euler_phi(std::uint64_t n);

}  // namespace divcert
