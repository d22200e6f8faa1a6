#pragma once

// Polynomiality and coefficient positivity of q-binomial quotients.
//
// Polynomiality is decided on exponent vectors. Positivity needs the
// coefficients, so it is only evaluated when expansion is requested and the
// degree fits the budget; otherwise the verdict leaves it open.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "divcert/limits.hpp"
#include "divcert/qpoly.hpp"

namespace divcert {

enum class QFamily {
  f12n_3n,    // (1-q)/(1-q^{6n-1}) [12n, 3n]
  f12n_4n,    // (1-q)/(1-q^{6n-1}) [12n, 4n]
  f60n_6n,    // (1-q)/(1-q^{30n-1}) [60n, 6n]
  f120n_40n,  // (1-q)/(1-q^{30n-1}) [120n, 40n]
  f120n_45n,  // (1-q)/(1-q^{30n-1}) [120n, 45n]
  f330n_88n,  // (1-q)/(1-q^{66n-1}) [330n, 88n]
  f30n_5n,    // (1-q)^2/((1-q^{10n-1})(1-q^{15n-1})) [30n, 5n]
  gcd_kn,     // (1-q^{gcd(k,n)})/(1-q^n) [2n, n-k]
  andrews,    // (1-q^{gcd(a,b)})/(1-q^{a+b}) [a+b, a]
  anbn,       // (1-q^{gcd(an,bn+1)})/(1-q^{bn+1}) [an+bn, an]
  c_abn,      // (1-q^a)/(1-q^{bn+1}) [an+bn, an]
};

std::string to_string(QFamily family);

struct QFamilyVerdict {
  QFamily family = QFamily::f12n_3n;
  std::uint64_t n = 0;
  std::uint64_t k = 0;
  std::uint64_t a = 0;
  std::uint64_t b = 0;
  bool polynomial = false;
  // Empty when the coefficients were not formed.
  std::optional<bool> nonneg;
  std::vector<std::pair<std::uint64_t, Int>> negative_positions;
  std::uint64_t degree = 0;
  // Whether positivity is part of the family's known result; for the
  // (1-q)^2/(...) [30n, 5n] family only polynomiality is.
  bool claims_nonneg = true;

  // Polynomial, and non-negative wherever that is claimed and was evaluated.
  bool meets_claim() const;
};

// Builds the quotient for one family member. Unused indices are ignored.
QuotientExpr family_expr(QFamily family, std::uint64_t n, std::uint64_t k = 0,
                         std::uint64_t a = 0, std::uint64_t b = 0);

// Exponent-vector verdict plus, when `expand` is set and the degree fits,
// the coefficient checks. Every expansion is checked to be reciprocal and to
// specialize at q = 1 to the expression's integer value.
QFamilyVerdict evaluate_family(QFamily family, const QuotientExpr& expr, bool expand,
                               const Limits& limits = default_limits());

// The seven families at one n, in declaration order.
std::vector<QFamilyVerdict> verify_thm4(std::uint64_t n, bool expand_coefficients,
                                        const Limits& limits = default_limits());

// gcd(0, n) = n, so k = 0 gives [2n, n] itself.
QFamilyVerdict verify_thm_kn(std::uint64_t n, std::uint64_t k, bool expand = true,
                             const Limits& limits = default_limits());

// B_{n,k}(q) by its quotient definition, checked against
// [2n-1, n-k] - q^k [2n-1, n-k-1]. 1 <= k <= n.
IntPoly b_nk_poly(std::uint64_t n, std::uint64_t k, const Limits& limits = default_limits());

QFamilyVerdict lemma_andrews_check(std::uint64_t a, std::uint64_t b, bool expand = true,
                                   const Limits& limits = default_limits());

// Both displayed forms are compared as exponent vectors, then the verdict
// is the Andrews-type check at (an, bn + 1).
QFamilyVerdict verify_thm_anbn(std::uint64_t a, std::uint64_t b, std::uint64_t n,
                               bool expand = true, const Limits& limits = default_limits());

IntPoly c_abn_poly(std::uint64_t a, std::uint64_t b, std::uint64_t n,
                   const Limits& limits = default_limits());

struct Conj330Report {
  std::uint64_t n = 0;
  std::uint64_t degree = 0;
  std::vector<std::pair<std::uint64_t, Int>> negative_positions;
  // negative_positions == [(1, -1), (degree - 1, -1)]
  bool pattern_holds = false;
};

Conj330Report conj_330n88n_check(std::uint64_t n, const Limits& limits = default_limits());

}  // namespace divcert
