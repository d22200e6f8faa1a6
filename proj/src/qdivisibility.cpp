#include "divcert/qdivisibility.hpp"

#include <numeric>
#include <string>

#include "divcert/errors.hpp"

namespace divcert {

namespace {

struct Thm4Shape {
  QFamily family;
  std::uint64_t top;   // binomial top is top * n
  std::uint64_t bottom;
};

constexpr Thm4Shape kThm4[] = {
    {QFamily::f12n_3n, 12, 3},     {QFamily::f12n_4n, 12, 4},
    {QFamily::f60n_6n, 60, 6},     {QFamily::f120n_40n, 120, 40},
    {QFamily::f120n_45n, 120, 45}, {QFamily::f330n_88n, 330, 88},
    {QFamily::f30n_5n, 30, 5},
};

}  // namespace

std::string to_string(QFamily family) {
  switch (family) {
    case QFamily::f12n_3n: return "12n_3n";
    case QFamily::f12n_4n: return "12n_4n";
    case QFamily::f60n_6n: return "60n_6n";
    case QFamily::f120n_40n: return "120n_40n";
    case QFamily::f120n_45n: return "120n_45n";
    case QFamily::f330n_88n: return "330n_88n";
    case QFamily::f30n_5n: return "30n_5n";
    case QFamily::gcd_kn: return "gcd_kn";
    case QFamily::andrews: return "andrews";
    case QFamily::anbn: return "anbn";
    case QFamily::c_abn: return "c_abn";
  }
  return "unknown";
}

bool QFamilyVerdict::meets_claim() const {
  if (!polynomial) return false;
  if (claims_nonneg && nonneg.has_value()) return *nonneg;
  return true;
}

QuotientExpr family_expr(QFamily family, std::uint64_t n, std::uint64_t k, std::uint64_t a,
                         std::uint64_t b) {
  switch (family) {
    case QFamily::f12n_3n: return {{1}, {6 * n - 1}, 12 * n, 3 * n};
    case QFamily::f12n_4n: return {{1}, {6 * n - 1}, 12 * n, 4 * n};
    case QFamily::f60n_6n: return {{1}, {30 * n - 1}, 60 * n, 6 * n};
    case QFamily::f120n_40n: return {{1}, {30 * n - 1}, 120 * n, 40 * n};
    case QFamily::f120n_45n: return {{1}, {30 * n - 1}, 120 * n, 45 * n};
    case QFamily::f330n_88n: return {{1}, {66 * n - 1}, 330 * n, 88 * n};
    case QFamily::f30n_5n: return {{1, 1}, {10 * n - 1, 15 * n - 1}, 30 * n, 5 * n};
    case QFamily::gcd_kn: {
      if (k > n) throw DomainError("gcd_kn family: need k <= n");
      return {{std::gcd(k, n)}, {n}, 2 * n, n - k};
    }
    case QFamily::andrews: return {{std::gcd(a, b)}, {a + b}, a + b, a};
    case QFamily::anbn: {
      const std::uint64_t an = a * n;
      const std::uint64_t bn1 = b * n + 1;
      return {{std::gcd(an, bn1)}, {bn1}, an + bn1 - 1, an};
    }
    case QFamily::c_abn: return {{a}, {b * n + 1}, a * n + b * n, a * n};
  }
  throw DomainError("family_expr: unknown family");
}

QFamilyVerdict evaluate_family(QFamily family, const QuotientExpr& expr, bool expand_coeffs,
                               const Limits& limits) {
  QFamilyVerdict v;
  v.family = family;
  v.claims_nonneg = family != QFamily::f30n_5n;
  const CycloFactorization f = expr_factorization(expr);
  v.polynomial = is_polynomial(f);
  if (!v.polynomial) return v;
  v.degree = static_cast<std::uint64_t>(f.degree());
  if (!expand_coeffs || v.degree > limits.degree) return v;

  const IntPoly poly = expand(f, limits);
  auto report = is_nonneg(poly);
  v.nonneg = report.nonneg;
  v.negative_positions = std::move(report.negatives);

  const std::string where = to_string(family) + " at [" + std::to_string(expr.binom_m()) +
                            ", " + std::to_string(expr.binom_k()) + "]";
  check_invariant(is_reciprocal(poly), "expanded family is not reciprocal: " + where);
  const Rational at_one = expr.value_at_one(limits);
  check_invariant(at_one.get_den() == 1 && at_one > 0,
                  "family value at q = 1 is not a positive integer: " + where);
  check_invariant(poly.eval_at_one() == at_one.get_num(),
                  "expansion at q = 1 differs from the integer quotient: " + where);
  return v;
}

std::vector<QFamilyVerdict> verify_thm4(std::uint64_t n, bool expand_coefficients,
                                        const Limits& limits) {
  if (n == 0) throw DomainError("verify_thm4: n must be >= 1");
  std::vector<QFamilyVerdict> out;
  for (const auto& shape : kThm4) {
    auto v = evaluate_family(shape.family, family_expr(shape.family, n), expand_coefficients,
                             limits);
    v.n = n;
    out.push_back(std::move(v));
  }
  return out;
}

QFamilyVerdict verify_thm_kn(std::uint64_t n, std::uint64_t k, bool expand_coeffs,
                             const Limits& limits) {
  if (n == 0 || k > n) throw DomainError("verify_thm_kn: need n >= 1 and 0 <= k <= n");
  auto v = evaluate_family(QFamily::gcd_kn, family_expr(QFamily::gcd_kn, n, k), expand_coeffs,
                           limits);
  v.n = n;
  v.k = k;
  return v;
}

IntPoly b_nk_poly(std::uint64_t n, std::uint64_t k, const Limits& limits) {
  if (k == 0 || k > n) throw DomainError("b_nk_poly: need 1 <= k <= n");
  const QuotientExpr expr({k}, {n}, 2 * n, n - k);
  const CycloFactorization f = expr_factorization(expr);
  check_invariant(is_polynomial(f), "B_{n,k} is not a polynomial");
  IntPoly by_quotient = expand(f, limits);

  IntPoly by_difference = qbinom_poly(2 * n - 1, n - k, limits);
  if (n - k >= 1) by_difference -= qbinom_poly(2 * n - 1, n - k - 1, limits).shifted(k);
  check_invariant(by_quotient == by_difference,
                  "B_{n,k}: quotient and difference forms disagree at n = " +
                      std::to_string(n) + ", k = " + std::to_string(k));
  check_invariant(is_nonneg(by_quotient).nonneg, "B_{n,k} has a negative coefficient");
  return by_quotient;
}

QFamilyVerdict lemma_andrews_check(std::uint64_t a, std::uint64_t b, bool expand_coeffs,
                                   const Limits& limits) {
  if (a == 0 || b == 0) throw DomainError("lemma_andrews_check: a, b must be >= 1");
  const QuotientExpr expr = family_expr(QFamily::andrews, 0, 0, a, b);

  // e_d = [d | gcd(a,b)] + floor((a+b-1)/d) - floor(a/d) - floor(b/d)
  CycloFactorization direct;
  const std::uint64_t g = std::gcd(a, b);
  for (std::uint64_t d = 2; d <= a + b; ++d) {
    direct.add(d, static_cast<std::int64_t>(g % d == 0) +
                      static_cast<std::int64_t>((a + b - 1) / d) -
                      static_cast<std::int64_t>(a / d) - static_cast<std::int64_t>(b / d));
  }
  check_invariant(direct == expr_factorization(expr),
                  "lemma_andrews_check: closed-form exponents differ from the generic ones");

  auto v = evaluate_family(QFamily::andrews, expr, expand_coeffs, limits);
  v.a = a;
  v.b = b;
  return v;
}

QFamilyVerdict verify_thm_anbn(std::uint64_t a, std::uint64_t b, std::uint64_t n,
                               bool expand_coeffs, const Limits& limits) {
  if (a == 0 || b == 0 || n == 0) throw DomainError("verify_thm_anbn: a, b, n must be >= 1");
  const std::uint64_t an = a * n;
  const std::uint64_t bn1 = b * n + 1;
  const std::uint64_t g = std::gcd(an, bn1);
  const QuotientExpr first({g}, {bn1}, an + bn1 - 1, an);
  const QuotientExpr second({g}, {an + bn1}, an + bn1, an);
  check_invariant(expr_factorization(first) == expr_factorization(second),
                  "verify_thm_anbn: the two forms have different exponent vectors");
  auto v = lemma_andrews_check(an, bn1, expand_coeffs, limits);
  v.family = QFamily::anbn;
  v.a = a;
  v.b = b;
  v.n = n;
  return v;
}

IntPoly c_abn_poly(std::uint64_t a, std::uint64_t b, std::uint64_t n, const Limits& limits) {
  if (a == 0 || b == 0 || n == 0) throw DomainError("c_abn_poly: a, b, n must be >= 1");
  const std::uint64_t bn1 = b * n + 1;
  // gcd(an, bn + 1) = gcd(a, bn + 1) divides a, so the expression is the
  // Andrews-type quotient at (an, bn + 1) times (1 - q^a)/(1 - q^gcd).
  const std::uint64_t g = std::gcd(a * n, bn1);
  check_invariant(g == std::gcd(a, bn1) && a % g == 0,
                  "c_abn_poly: gcd(an, bn + 1) does not divide a");
  const QuotientExpr expr = family_expr(QFamily::c_abn, n, 0, a, b);
  const CycloFactorization f = expr_factorization(expr);
  check_invariant(is_polynomial(f), "C_{a,b,n} is not a polynomial");
  IntPoly poly = expand(f, limits);
  check_invariant(is_nonneg(poly).nonneg, "C_{a,b,n} has a negative coefficient");
  return poly;
}

Conj330Report conj_330n88n_check(std::uint64_t n, const Limits& limits) {
  if (n == 0) throw DomainError("conj_330n88n_check: n must be >= 1");
  const QuotientExpr expr = family_expr(QFamily::f30n_5n, n);
  const CycloFactorization f = expr_factorization(expr);
  check_invariant(is_polynomial(f), "the [30n, 5n] family is not a polynomial");
  const IntPoly poly = expand(f, limits);

  Conj330Report report;
  report.n = n;
  report.degree = static_cast<std::uint64_t>(poly.degree());
  check_invariant(report.degree == 125 * n * n - 25 * n + 4,
                  "the [30n, 5n] family has unexpected degree");
  report.negative_positions = is_nonneg(poly).negatives;
  const decltype(report.negative_positions) expected = {{1, Int(-1)},
                                                        {report.degree - 1, Int(-1)}};
  report.pattern_holds = report.negative_positions == expected;
  return report;
}

}  // namespace divcert
