#include "divcert/qpoly.hpp"

#include <algorithm>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <string>

#include "divcert/errors.hpp"

namespace divcert {

namespace {

std::vector<std::uint64_t> divisors(std::uint64_t n) {
  std::vector<std::uint64_t> small;
  std::vector<std::uint64_t> large;
  for (std::uint64_t d = 1; d * d <= n; ++d) {
    if (n % d != 0) continue;
    small.push_back(d);
    if (d * d != n) large.push_back(n / d);
  }
  small.insert(small.end(), large.rbegin(), large.rend());
  return small;
}

int mobius(std::uint64_t n) {
  int mu = 1;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    n /= p;
    if (n % p == 0) return 0;
    mu = -mu;
  }
  if (n > 1) mu = -mu;
  return mu;
}

class CyclotomicCache {
 public:
  const IntPoly& get(std::uint64_t d) {
    {
      std::shared_lock lock(mutex_);
      if (auto it = table_.find(d); it != table_.end()) return *it->second;
    }
    // Built outside the lock: the recursion below reads smaller entries.
    auto poly = std::make_unique<IntPoly>(build(d));
    std::unique_lock lock(mutex_);
    auto [it, inserted] = table_.try_emplace(d, std::move(poly));
    return *it->second;
  }

 private:
  IntPoly build(std::uint64_t d) {
    if (d == 1) return IntPoly{-1, 1};
    IntPoly num = IntPoly::monomial(d) - IntPoly{1};
    for (std::uint64_t e : divisors(d)) {
      if (e == d) continue;
      auto [quot, rem] = num.divmod(get(e));
      check_invariant(rem.is_zero(), "cyclotomic: nonzero remainder dividing by Phi_" +
                                         std::to_string(e) + " at d = " + std::to_string(d));
      num = std::move(quot);
    }
    return num;
  }

  std::shared_mutex mutex_;
  // Append-only; node addresses stay valid for the life of the process.
  std::map<std::uint64_t, std::unique_ptr<IntPoly>> table_;
};

CyclotomicCache& cyclotomic_cache() {
  static CyclotomicCache cache;
  return cache;
}

// In-place power-series operations modulo q^{len}.
void times_one_minus_q_pow(std::vector<Int>& a, std::uint64_t k) {
  for (std::uint64_t i = a.size(); i-- > k;) a[i] -= a[i - k];
}

void over_one_minus_q_pow(std::vector<Int>& a, std::uint64_t k) {
  for (std::uint64_t i = k; i < a.size(); ++i) a[i] += a[i - k];
}

}  // namespace

IntPoly::IntPoly(std::vector<Int> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

IntPoly::IntPoly(std::initializer_list<long> coeffs) {
  coeffs_.reserve(coeffs.size());
  for (long c : coeffs) coeffs_.emplace_back(c);
  trim();
}

IntPoly IntPoly::monomial(std::uint64_t degree, const Int& coeff) {
  std::vector<Int> c(degree + 1, 0);
  c[degree] = coeff;
  return IntPoly(std::move(c));
}

IntPoly IntPoly::one_minus_q_pow(std::uint64_t m) {
  if (m == 0) return IntPoly{};
  return IntPoly{1} - monomial(m);
}

void IntPoly::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

Int IntPoly::eval(const Int& q) const {
  Int acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * q + *it;
  return acc;
}

Int IntPoly::eval_at_one() const {
  Int acc = 0;
  for (const auto& c : coeffs_) acc += c;
  return acc;
}

IntPoly& IntPoly::operator+=(const IntPoly& rhs) {
  if (rhs.coeffs_.size() > coeffs_.size()) coeffs_.resize(rhs.coeffs_.size(), 0);
  for (std::size_t i = 0; i < rhs.coeffs_.size(); ++i) coeffs_[i] += rhs.coeffs_[i];
  trim();
  return *this;
}

IntPoly& IntPoly::operator-=(const IntPoly& rhs) {
  if (rhs.coeffs_.size() > coeffs_.size()) coeffs_.resize(rhs.coeffs_.size(), 0);
  for (std::size_t i = 0; i < rhs.coeffs_.size(); ++i) coeffs_[i] -= rhs.coeffs_[i];
  trim();
  return *this;
}

IntPoly operator*(const IntPoly& lhs, const IntPoly& rhs) {
  if (lhs.is_zero() || rhs.is_zero()) return {};
  std::vector<Int> out(lhs.coeffs_.size() + rhs.coeffs_.size() - 1, 0);
  for (std::size_t i = 0; i < lhs.coeffs_.size(); ++i) {
    if (lhs.coeffs_[i] == 0) continue;
    const mpz_srcptr a = lhs.coeffs_[i].get_mpz_t();
    for (std::size_t j = 0; j < rhs.coeffs_.size(); ++j) {
      if (rhs.coeffs_[j] == 0) continue;
      mpz_addmul(out[i + j].get_mpz_t(), a, rhs.coeffs_[j].get_mpz_t());
    }
  }
  return IntPoly(std::move(out));
}

IntPoly IntPoly::shifted(std::uint64_t by) const {
  if (is_zero()) return {};
  std::vector<Int> c(by, 0);
  c.insert(c.end(), coeffs_.begin(), coeffs_.end());
  return IntPoly(std::move(c));
}

IntPoly& IntPoly::add_shifted(const IntPoly& rhs, std::uint64_t by) {
  if (rhs.is_zero()) return *this;
  if (rhs.coeffs_.size() + by > coeffs_.size()) coeffs_.resize(rhs.coeffs_.size() + by, 0);
  for (std::size_t i = 0; i < rhs.coeffs_.size(); ++i) coeffs_[i + by] += rhs.coeffs_[i];
  trim();
  return *this;
}

std::pair<IntPoly, IntPoly> IntPoly::divmod(const IntPoly& divisor) const {
  if (divisor.is_zero()) throw DomainError("IntPoly::divmod: division by zero");
  const Int& lead = divisor.coeffs_.back();
  if (lead != 1 && lead != -1) {
    throw DomainError("IntPoly::divmod: divisor must have leading coefficient +-1");
  }
  if (coeffs_.size() < divisor.coeffs_.size()) return {IntPoly{}, *this};
  std::vector<Int> rem = coeffs_;
  const std::size_t dd = divisor.coeffs_.size() - 1;
  std::vector<Int> quot(coeffs_.size() - dd, 0);
  for (std::size_t i = quot.size(); i-- > 0;) {
    Int c = rem[i + dd];
    if (lead == -1) c = -c;
    if (c == 0) continue;
    quot[i] = c;
    for (std::size_t j = 0; j <= dd; ++j) {
      if (divisor.coeffs_[j] == 0) continue;
      mpz_submul(rem[i + j].get_mpz_t(), c.get_mpz_t(), divisor.coeffs_[j].get_mpz_t());
    }
  }
  return {IntPoly(std::move(quot)), IntPoly(std::move(rem))};
}

void CycloFactorization::add(std::uint64_t d, std::int64_t e) {
  if (e == 0) return;
  auto [it, inserted] = exponents.try_emplace(d, 0);
  it->second += e;
  if (it->second == 0) exponents.erase(it);
}

std::int64_t CycloFactorization::exponent(std::uint64_t d) const {
  auto it = exponents.find(d);
  return it == exponents.end() ? 0 : it->second;
}

std::int64_t CycloFactorization::degree() const {
  std::int64_t deg = 0;
  for (const auto& [d, e] : exponents) deg += e * static_cast<std::int64_t>(euler_phi(d));
  return deg;
}

QuotientExpr::QuotientExpr(std::vector<std::uint64_t> numerator_ms,
                           std::vector<std::uint64_t> denominator_ns, std::uint64_t binom_m,
                           std::uint64_t binom_k)
    : numerator_ms_(std::move(numerator_ms)),
      denominator_ns_(std::move(denominator_ns)),
      binom_m_(binom_m),
      binom_k_(binom_k) {
  if (numerator_ms_.size() != denominator_ns_.size()) {
    throw DomainError("QuotientExpr: numerator and denominator must have equally many "
                      "(1 - q^m) factors");
  }
  auto zero = [](std::uint64_t v) { return v == 0; };
  if (std::any_of(numerator_ms_.begin(), numerator_ms_.end(), zero) ||
      std::any_of(denominator_ns_.begin(), denominator_ns_.end(), zero)) {
    throw DomainError("QuotientExpr: exponents of (1 - q^m) factors must be positive");
  }
  if (binom_k_ > binom_m_) throw DomainError("QuotientExpr: need binom_k <= binom_m");
}

Rational QuotientExpr::value_at_one(const Limits& limits) const {
  Rational v(binom_exact(Natural(binom_m_), Natural(binom_k_), limits));
  for (auto m : numerator_ms_) v *= Rational(Natural(m));
  for (auto n : denominator_ns_) v /= Rational(Natural(n));
  v.canonicalize();
  return v;
}

std::uint64_t euler_phi(std::uint64_t n) {
  if (n == 0) throw DomainError("euler_phi: n must be >= 1");
  std::uint64_t phi = n;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    while (n % p == 0) n /= p;
    phi -= phi / p;
  }
  if (n > 1) phi -= phi / n;
  return phi;
}

const IntPoly& cyclotomic(std::uint64_t d) {
  if (d == 0) throw DomainError("cyclotomic: d must be >= 1");
  return cyclotomic_cache().get(d);
}

CycloFactorization qbinom_factorization(std::uint64_t m, std::uint64_t k) {
  if (k > m) throw DomainError("qbinom_factorization: need k <= m");
  CycloFactorization f;
  for (std::uint64_t d = 2; d <= m; ++d) {
    f.add(d, static_cast<std::int64_t>(m / d) - static_cast<std::int64_t>(k / d) -
                 static_cast<std::int64_t>((m - k) / d));
  }
  return f;
}

CycloFactorization expr_factorization(const QuotientExpr& expr) {
  CycloFactorization f = qbinom_factorization(expr.binom_m(), expr.binom_k());
  // The d = 1 factors cancel because the expression is balanced.
  for (auto m : expr.numerator_ms()) {
    for (auto d : divisors(m)) {
      if (d >= 2) f.add(d, 1);
    }
  }
  for (auto n : expr.denominator_ns()) {
    for (auto d : divisors(n)) {
      if (d >= 2) f.add(d, -1);
    }
  }
  return f;
}

bool is_polynomial(const CycloFactorization& f) {
  return std::all_of(f.exponents.begin(), f.exponents.end(),
                     [](const auto& entry) { return entry.second >= 0; });
}

IntPoly expand(const CycloFactorization& f, const Limits& limits) {
  if (!is_polynomial(f)) throw DomainError("expand: exponent vector has a negative entry");
  const std::int64_t degree = f.degree();
  if (static_cast<std::uint64_t>(degree) > limits.degree) {
    throw ResourceError("expand: degree " + std::to_string(degree) + " exceeds budget " +
                        std::to_string(limits.degree));
  }

  // Rewrite prod Phi_d^{e_d} as prod (1 - q^k)^{c_k} by Moebius inversion of
  // 1 - q^k = (1 - q) prod_{d | k, d >= 2} Phi_d, then multiply out as a
  // power series truncated past the known degree. Phi_1 = -(1 - q).
  std::map<std::uint64_t, std::int64_t> c;
  int sign = f.sign;
  for (const auto& [d, e] : f.exponents) {
    if (d == 1) {
      c[1] += e;
      if (e % 2 != 0) sign = -sign;
      continue;
    }
    for (auto k : divisors(d)) {
      if (int mu = mobius(d / k); mu != 0) c[k] += mu * e;
    }
  }
  std::vector<std::uint64_t> ups;
  std::vector<std::uint64_t> downs;
  for (const auto& [k, e] : c) {
    for (std::int64_t i = 0; i < e; ++i) ups.push_back(k);
    for (std::int64_t i = 0; i < -e; ++i) downs.push_back(k);
  }

  std::vector<Int> series(static_cast<std::size_t>(degree) + 1, 0);
  series[0] = sign;
  // Interleaving keeps partial products close to polynomials (for a
  // q-binomial every prefix is itself a q-binomial), so coefficients stay
  // small along the way.
  for (std::size_t i = 0; i < std::max(ups.size(), downs.size()); ++i) {
    if (i < ups.size()) times_one_minus_q_pow(series, ups[i]);
    if (i < downs.size()) over_one_minus_q_pow(series, downs[i]);
  }

  IntPoly out(std::move(series));
  check_invariant(out.degree() == degree,
                  "expand: degree " + std::to_string(out.degree()) + " differs from " +
                      std::to_string(degree));
  const Int lead = out.coeffs().back();
  check_invariant(lead == f.sign, "expand: leading coefficient mismatch");
  return out;
}

IntPoly qbinom_poly(std::uint64_t m, std::uint64_t k, const Limits& limits) {
  if (k > m) throw DomainError("qbinom_poly: need k <= m");
  const std::uint64_t degree = k * (m - k);
  if (degree > limits.degree) {
    throw ResourceError("qbinom_poly: degree " + std::to_string(degree) +
                        " exceeds budget " + std::to_string(limits.degree));
  }
  // row[j] holds [i, j]_q after processing i, via
  // [i, j] = [i-1, j] + q^{i-j} [i-1, j-1].
  std::vector<IntPoly> row(k + 1);
  row[0] = IntPoly{1};
  for (std::uint64_t i = 1; i <= m; ++i) {
    for (std::uint64_t j = std::min(i, k); j >= 1; --j) row[j].add_shifted(row[j - 1], i - j);
  }
  return row[k];
}

bool is_reciprocal(const IntPoly& p) {
  const auto& c = p.coeffs();
  return std::equal(c.begin(), c.begin() + c.size() / 2, c.rbegin());
}

bool is_unimodal(const IntPoly& p) {
  const auto& c = p.coeffs();
  bool descending = false;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (c[i] < 0) return false;
    if (i == 0) continue;
    if (c[i] < c[i - 1]) descending = true;
    if (descending && c[i] > c[i - 1]) return false;
  }
  return true;
}

NonnegReport is_nonneg(const IntPoly& p) {
  NonnegReport report;
  const auto& c = p.coeffs();
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (c[i] < 0) report.negatives.emplace_back(i, c[i]);
  }
  report.nonneg = report.negatives.empty();
  return report;
}

bool lemma_rsw_check(const IntPoly& p, std::uint64_t m, std::uint64_t n) {
  if (m == 0 || m > n) throw DomainError("lemma_rsw_check: need 1 <= m <= n");
  auto [quot, rem] = (IntPoly::one_minus_q_pow(m) * p).divmod(IntPoly::one_minus_q_pow(n));
  if (!rem.is_zero()) {
    throw DomainError("lemma_rsw_check: (1 - q^" + std::to_string(n) +
                      ") does not divide (1 - q^" + std::to_string(m) + ") P(q)");
  }
  return is_nonneg(quot).nonneg;
}

bool is_polynomial_by_division(const QuotientExpr& expr, const Limits& limits) {
  IntPoly num = qbinom_poly(expr.binom_m(), expr.binom_k(), limits);
  for (auto m : expr.numerator_ms()) num = num * IntPoly::one_minus_q_pow(m);
  IntPoly den{1};
  for (auto n : expr.denominator_ns()) den = den * IntPoly::one_minus_q_pow(n);
  return num.divmod(den).second.is_zero();
}

}  // namespace divcert
