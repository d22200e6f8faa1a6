#pragma once

// Exact integer arithmetic and classical number-theoretic primitives.
//
// Everything here is a pure function of its arguments. The two memoized
// tables (the prime sieve here, the cyclotomic table in qpoly) fill under
// an internal lock and never expose partial state.

#include <gmpxx.h>

#include <cstdint>
#include <vector>

#include "divcert/limits.hpp"

namespace divcert {

using Natural = mpz_class;
using Int = mpz_class;
using Rational = mpq_class;

struct PrimePower {
  Natural prime;
  std::uint64_t exponent = 0;

  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

// Prime factorization with primes strictly increasing and the product of
// the listed powers equal to `value`.
struct Factorization {
  std::vector<PrimePower> factors;
  Natural value;

  bool empty() const { return factors.empty(); }
};

// Evidence that p^valuation exactly divides binom(m, k). The valuation is
// computed from Legendre's formula; carry_count independently from the
// carries of k + (m - k) in base p (Kummer). Both must agree.
struct ValuationCertificate {
  Natural p;
  Natural m;
  Natural k;
  std::int64_t valuation = 0;
  std::int64_t carry_count = 0;
};

// Outcome of deciding D | binom(m, k) without forming the binomial.
// `required` is the exponent of each prime in D, aligned with `certificates`.
struct DivisibilityVerdict {
  bool divides = true;
  std::vector<ValuationCertificate> certificates;
  std::vector<std::uint64_t> required;
};

Natural gcd(const Natural& a, const Natural& b);
Natural totient(const Natural& n, const Limits& limits = default_limits());
Natural multiplicative_order(const Natural& p, const Natural& m,
                             const Limits& limits = default_limits());

// Ascending primes <= limit. Backed by a shared, growing sieve.
std::vector<std::uint64_t> primes_up_to(std::uint64_t limit,
                                        const Limits& limits = default_limits());

// Deterministic: Miller-Rabin with the first 13 prime bases is exact below
// 3.3e24; above that trial division is used, within the factoring ceiling.
bool is_prime(const Natural& n, const Limits& limits = default_limits());

// Trial division by sieved primes up to sqrt(n). Rejects n above
// limits.factor_ceiling rather than guessing.
Factorization factorize(const Natural& n, const Limits& limits = default_limits());

// v_p(n!) by Legendre's floor sum, cross-checked against (n - s_p(n))/(p - 1).
std::uint64_t legendre_valuation_factorial(const Natural& n, const Natural& p,
                                           const Limits& limits = default_limits());

ValuationCertificate binom_valuation(const Natural& m, const Natural& k,
                                     const Natural& p,
                                     const Limits& limits = default_limits());

// Base-p digits, least significant first. n = 0 gives {0}.
std::vector<Natural> base_p_digits(const Natural& n, const Natural& p);

// binom(m, k) mod p by Lucas' theorem.
Natural lucas_binom_mod_p(const Natural& m, const Natural& k, const Natural& p,
                          const Limits& limits = default_limits());

// Exact binomial. Oracle use only; m is capped by limits.binom_exact_max.
Natural binom_exact(const Natural& m, const Natural& k,
                    const Limits& limits = default_limits());

DivisibilityVerdict divides_binomial(const Natural& m, const Natural& k,
                                     const Natural& d,
                                     const Limits& limits = default_limits());

// Same decision for a modulus already given in factored form.
DivisibilityVerdict divides_binomial(const Natural& m, const Natural& k,
                                     const Factorization& d,
                                     const Limits& limits = default_limits());

// Exponent of p in n (n >= 1).
std::uint64_t valuation(const Natural& n, const Natural& p);

// Product of the distinct primes dividing n.
Natural radical(const Natural& n, const Limits& limits = default_limits());

// Merge two factorizations of coprime or overlapping values.
Factorization multiply(const Factorization& x, const Factorization& y);

std::uint64_t to_u64(const Natural& n);

}  // namespace divcert
