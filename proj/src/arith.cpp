#include "divcert/arith.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <string>

#include "divcert/errors.hpp"

namespace divcert {

namespace {

// Growing Eratosthenes table. Readers take a snapshot pointer; a refill
// builds a complete new table before publishing it.
class SieveCache {
 public:
  std::shared_ptr<const std::vector<std::uint64_t>> primes_through(std::uint64_t limit) {
    {
      std::shared_lock lock(mutex_);
      if (covered_ >= limit && primes_) return primes_;
    }
    std::unique_lock lock(mutex_);
    if (covered_ >= limit && primes_) return primes_;
    std::uint64_t target = std::max<std::uint64_t>({limit, covered_ * 2, 1u << 16});
    auto fresh = std::make_shared<std::vector<std::uint64_t>>(sieve(target));
    primes_ = std::move(fresh);
    covered_ = target;
    return primes_;
  }

 private:
  static std::vector<std::uint64_t> sieve(std::uint64_t limit) {
    std::vector<bool> composite(limit + 1, false);
    std::vector<std::uint64_t> out;
    for (std::uint64_t i = 2; i <= limit; ++i) {
      if (composite[i]) continue;
      out.push_back(i);
      if (i > limit / i) continue;
      for (std::uint64_t j = i * i; j <= limit; j += i) composite[j] = true;
    }
    return out;
  }

  std::shared_mutex mutex_;
  std::shared_ptr<const std::vector<std::uint64_t>> primes_;
  std::uint64_t covered_ = 0;
};

SieveCache& sieve_cache() {
  static SieveCache cache;
  return cache;
}

std::uint64_t isqrt(std::uint64_t n) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<long double>(n)));
  while (static_cast<unsigned __int128>(r) * r > n) --r;
  while (static_cast<unsigned __int128>(r + 1) * (r + 1) <= n) ++r;
  return r;
}

bool miller_rabin(const Natural& n, unsigned base) {
  Natural d = n - 1;
  std::uint64_t s = 0;
  while (mpz_even_p(d.get_mpz_t())) {
    d /= 2;
    ++s;
  }
  Natural x;
  Natural b = base;
  mpz_powm(x.get_mpz_t(), b.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
  const Natural n_minus_1 = n - 1;
  if (x == 1 || x == n_minus_1) return true;
  for (std::uint64_t i = 1; i < s; ++i) {
    x = (x * x) % n;
    if (x == n_minus_1) return true;
  }
  return false;
}

void require_prime(const Natural& p, const Limits& limits, const char* op) {
  if (!is_prime(p, limits)) {
    throw DomainError(std::string(op) + ": p = " + p.get_str() + " is not prime");
  }
}

Natural power(const Natural& base, const Natural& exp, const Natural& mod) {
  Natural r;
  mpz_powm(r.get_mpz_t(), base.get_mpz_t(), exp.get_mpz_t(), mod.get_mpz_t());
  return r;
}

std::uint64_t digit_sum_valuation(const Natural& n, const Natural& p) {
  Natural digit_sum = 0;
  for (const auto& d : base_p_digits(n, p)) digit_sum += d;
  Natural v = (n - digit_sum) / (p - 1);
  return to_u64(v);
}

std::uint64_t floor_sum_valuation(const Natural& n, const Natural& p) {
  Natural t = n;
  Natural sum = 0;
  while (t > 0) {
    t /= p;
    sum += t;
  }
  return to_u64(sum);
}

std::int64_t kummer_carries(const Natural& x, const Natural& y, const Natural& p) {
  auto dx = base_p_digits(x, p);
  auto dy = base_p_digits(y, p);
  const std::size_t len = std::max(dx.size(), dy.size());
  dx.resize(len, 0);
  dy.resize(len, 0);
  std::int64_t carries = 0;
  Natural carry = 0;
  for (std::size_t i = 0; i < len; ++i) {
    Natural s = dx[i] + dy[i] + carry;
    carry = s >= p ? 1 : 0;
    carries += carry == 1 ? 1 : 0;
  }
  return carries;
}

// binom(a, b) mod p for 0 <= b <= a < p.
Natural small_binom_mod(const Natural& a, const Natural& b, const Natural& p) {
  Natural num = 1;
  Natural den = 1;
  for (Natural j = 0; j < b; ++j) {
    num = (num * (a - j)) % p;
    den = (den * (j + 1)) % p;
  }
  Natural inv;
  mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), p.get_mpz_t());
  return (num * inv) % p;
}

}  // namespace

std::uint64_t to_u64(const Natural& n) {
  if (n < 0 || mpz_sizeinbase(n.get_mpz_t(), 2) > 64) {
    throw ResourceError("value " + n.get_str() + " does not fit in 64 bits");
  }
  // mpz_get_ui is 64-bit on LP64 targets.
  static_assert(sizeof(unsigned long) == 8);
  return mpz_get_ui(n.get_mpz_t());
}

Natural gcd(const Natural& a, const Natural& b) {
  if (a == 0 && b == 0) throw DomainError("gcd(0, 0) is undefined");
  Natural r;
  mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

std::vector<std::uint64_t> primes_up_to(std::uint64_t limit, const Limits& limits) {
  if (limit > limits.sieve_limit) {
    throw ResourceError("sieve bound " + std::to_string(limit) + " exceeds budget " +
                        std::to_string(limits.sieve_limit));
  }
  if (limit < 2) return {};
  auto table = sieve_cache().primes_through(limit);
  auto end = std::upper_bound(table->begin(), table->end(), limit);
  return {table->begin(), end};
}

bool is_prime(const Natural& n, const Limits& limits) {
  if (n < 2) return false;
  // Small moduli come up in every valuation call.
  static constexpr std::uint64_t kSmall = 1 << 16;
  if (n < kSmall) {
    static const std::vector<bool> small = [] {
      std::vector<bool> s(kSmall, true);
      s[0] = s[1] = false;
      for (std::uint64_t i = 2; i * i < kSmall; ++i) {
        if (!s[i]) continue;
        for (std::uint64_t j = i * i; j < kSmall; j += i) s[j] = false;
      }
      return s;
    }();
    return small[n.get_ui()];
  }
  static constexpr std::array<unsigned, 13> kBases = {2, 3, 5, 7, 11, 13, 17,
                                                      19, 23, 29, 31, 37, 41};
  for (unsigned b : kBases) {
    if (n == b) return true;
    if (mpz_divisible_ui_p(n.get_mpz_t(), b)) return false;
  }
  static const Natural kDeterministicBound("3317044064679887385961981");
  if (n < kDeterministicBound) {
    return std::all_of(kBases.begin(), kBases.end(),
                       [&](unsigned b) { return miller_rabin(n, b); });
  }
  if (n > limits.factor_ceiling) {
    throw ResourceError("is_prime: " + n.get_str() +
                        " is beyond deterministic range and factoring ceiling");
  }
  const auto f = factorize(n, limits);
  return f.factors.size() == 1 && f.factors[0].exponent == 1;
}

Factorization factorize(const Natural& n, const Limits& limits) {
  if (n < 1) throw DomainError("factorize: n must be >= 1");
  if (n > limits.factor_ceiling) {
    throw ResourceError("factorize: " + n.get_str() + " exceeds factoring ceiling " +
                        std::to_string(limits.factor_ceiling));
  }
  Factorization out;
  out.value = n;
  std::uint64_t rest = to_u64(n);
  const std::uint64_t root = isqrt(rest);
  auto table = sieve_cache().primes_through(std::max<std::uint64_t>(root, 2));
  for (std::uint64_t p : *table) {
    if (p * p > rest) break;
    if (rest % p != 0) continue;
    std::uint64_t e = 0;
    while (rest % p == 0) {
      rest /= p;
      ++e;
    }
    out.factors.push_back({Natural(p), e});
  }
  if (rest > 1) out.factors.push_back({Natural(rest), 1});

  Natural product = 1;
  for (const auto& [p, e] : out.factors) {
    Natural pe;
    mpz_pow_ui(pe.get_mpz_t(), p.get_mpz_t(), e);
    product *= pe;
    check_invariant(is_prime(p, limits), "factorize: non-prime factor " + p.get_str());
  }
  check_invariant(product == n, "factorize: product mismatch for " + n.get_str());
  return out;
}

Natural totient(const Natural& n, const Limits& limits) {
  if (n < 1) throw DomainError("totient: n must be >= 1");
  Natural phi = n;
  for (const auto& f : factorize(n, limits).factors) {
    phi = phi / f.prime * (f.prime - 1);
  }
  return phi;
}

Natural multiplicative_order(const Natural& p, const Natural& m, const Limits& limits) {
  if (m < 2) throw DomainError("multiplicative_order: modulus must be >= 2");
  if (gcd(p, m) != 1) {
    throw DomainError("multiplicative_order: gcd(" + p.get_str() + ", " + m.get_str() +
                      ") != 1");
  }
  const Natural phi = totient(m, limits);
  Natural s = phi;
  for (const auto& f : factorize(phi, limits).factors) {
    while (s % f.prime == 0 && power(p, s / f.prime, m) == 1) s /= f.prime;
  }
  check_invariant(power(p, s, m) == 1, "multiplicative_order: p^s != 1");
  check_invariant(phi % s == 0, "multiplicative_order: order does not divide totient");
  return s;
}

std::vector<Natural> base_p_digits(const Natural& n, const Natural& p) {
  if (p < 2) throw DomainError("base_p_digits: base must be >= 2");
  if (n < 0) throw DomainError("base_p_digits: n must be non-negative");
  if (n == 0) return {Natural(0)};
  std::vector<Natural> digits;
  Natural t = n;
  Natural r;
  while (t > 0) {
    mpz_fdiv_qr(t.get_mpz_t(), r.get_mpz_t(), t.get_mpz_t(), p.get_mpz_t());
    digits.push_back(r);
  }
  return digits;
}

std::uint64_t valuation(const Natural& n, const Natural& p) {
  if (n < 1) throw DomainError("valuation: n must be >= 1");
  std::uint64_t v = 0;
  Natural t = n;
  while (mpz_divisible_p(t.get_mpz_t(), p.get_mpz_t())) {
    t /= p;
    ++v;
  }
  return v;
}

std::uint64_t legendre_valuation_factorial(const Natural& n, const Natural& p,
                                           const Limits& limits) {
  require_prime(p, limits, "legendre_valuation_factorial");
  if (n < 0) throw DomainError("legendre_valuation_factorial: n must be >= 0");
  const std::uint64_t by_floors = floor_sum_valuation(n, p);
  check_invariant(by_floors == digit_sum_valuation(n, p), [&] {
    return "Legendre floor sum and digit-sum formula disagree at n = " + n.get_str() +
           ", p = " + p.get_str();
  });
  return by_floors;
}

ValuationCertificate binom_valuation(const Natural& m, const Natural& k, const Natural& p,
                                     const Limits& limits) {
  if (k < 0 || k > m) {
    throw DomainError("binom_valuation: need 0 <= k <= m, got m = " + m.get_str() +
                      ", k = " + k.get_str());
  }
  ValuationCertificate cert{p, m, k, 0, 0};
  const Natural rest = m - k;
  cert.valuation = static_cast<std::int64_t>(legendre_valuation_factorial(m, p, limits)) -
                   static_cast<std::int64_t>(legendre_valuation_factorial(k, p, limits)) -
                   static_cast<std::int64_t>(legendre_valuation_factorial(rest, p, limits));
  cert.carry_count = kummer_carries(k, rest, p);
  check_invariant(cert.valuation >= 0, "binom_valuation: negative valuation");
  check_invariant(cert.valuation == cert.carry_count, [&] {
    return "binom_valuation: Legendre and Kummer disagree at (" + m.get_str() + ", " +
           k.get_str() + ", " + p.get_str() + ")";
  });
  return cert;
}

Natural lucas_binom_mod_p(const Natural& m, const Natural& k, const Natural& p,
                          const Limits& limits) {
  require_prime(p, limits, "lucas_binom_mod_p");
  if (k < 0 || k > m) return 0;
  const auto top = base_p_digits(m, p);
  const auto bottom = base_p_digits(k, p);
  Natural result = 1;
  for (std::size_t i = 0; i < top.size(); ++i) {
    const Natural b = i < bottom.size() ? bottom[i] : Natural(0);
    if (b > top[i]) return 0;
    result = (result * small_binom_mod(top[i], b, p)) % p;
  }
  return result;
}

Natural binom_exact(const Natural& m, const Natural& k, const Limits& limits) {
  if (k < 0 || k > m) throw DomainError("binom_exact: need 0 <= k <= m");
  if (m > limits.binom_exact_max) {
    throw ResourceError("binom_exact: m = " + m.get_str() + " exceeds budget " +
                        std::to_string(limits.binom_exact_max));
  }
  const Natural j = std::min<Natural>(k, m - k);
  const Natural base = m - j;
  Natural r = 1;
  for (Natural i = 1; i <= j; ++i) {
    r *= base + i;
    mpz_divexact(r.get_mpz_t(), r.get_mpz_t(), i.get_mpz_t());
  }
  return r;
}

DivisibilityVerdict divides_binomial(const Natural& m, const Natural& k,
                                     const Factorization& d, const Limits& limits) {
  if (k < 0 || k > m) throw DomainError("divides_binomial: need 0 <= k <= m");
  DivisibilityVerdict verdict;
  for (const auto& [p, e] : d.factors) {
    auto cert = binom_valuation(m, k, p, limits);
    if (cert.valuation < static_cast<std::int64_t>(e)) verdict.divides = false;
    verdict.certificates.push_back(std::move(cert));
    verdict.required.push_back(e);
  }
  return verdict;
}

DivisibilityVerdict divides_binomial(const Natural& m, const Natural& k, const Natural& d,
                                     const Limits& limits) {
  if (d < 1) throw DomainError("divides_binomial: modulus must be >= 1");
  return divides_binomial(m, k, factorize(d, limits), limits);
}

Natural radical(const Natural& n, const Limits& limits) {
  Natural r = 1;
  for (const auto& f : factorize(n, limits).factors) r *= f.prime;
  return r;
}

Factorization multiply(const Factorization& x, const Factorization& y) {
  Factorization out;
  out.value = x.value * y.value;
  auto i = x.factors.begin();
  auto j = y.factors.begin();
  while (i != x.factors.end() || j != y.factors.end()) {
    if (j == y.factors.end() || (i != x.factors.end() && i->prime < j->prime)) {
      out.factors.push_back(*i++);
    } else if (i == x.factors.end() || j->prime < i->prime) {
      out.factors.push_back(*j++);
    } else {
      out.factors.push_back({i->prime, i->exponent + j->exponent});
      ++i;
      ++j;
    }
  }
  return out;
}

}  // namespace divcert
