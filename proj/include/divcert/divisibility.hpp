#pragma once

// Integer-side divisibility of binomial coefficients: Sun's f(a, b) with its
// totient/order bound, the congruence families, the 3n - 1 witnesses, the
// prime-window lemma and theta(x; 3, 2).
//
// Every divisibility decision goes through divides_binomial, i.e. through
// the factorization of the modulus and p-adic valuations. No binomial is
// materialized except by the oracles in the tests.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "divcert/arith.hpp"
#include "divcert/limits.hpp"

namespace divcert {

// (bn + 1)/gcd(a, bn + 1) divides binom(an + bn, an).
bool verify_thm0(std::uint64_t a, std::uint64_t b, std::uint64_t n,
                 const Limits& limits = default_limits());

struct TheoremBound {
  Natural p;      // smallest prime dividing a but not b
  Natural s;      // order of p modulo a + b
  Natural phi;    // phi(a + b); s divides it
  Natural bound;  // (p^s - 1)/(a + b)
};

// None exactly when every prime factor of a divides b.
std::optional<TheoremBound> theorem2_bound(std::uint64_t a, std::uint64_t b,
                                           const Limits& limits = default_limits());

enum class FabVerdict { found, proven_zero, inconclusive };

std::string to_string(FabVerdict v);

struct FabResult {
  std::uint64_t a = 0;
  std::uint64_t b = 0;
  FabVerdict verdict = FabVerdict::inconclusive;
  // found: the least failing n. inconclusive: the last n scanned.
  std::uint64_t n = 0;
  std::optional<TheoremBound> bound;
  // Valuations at the failing n, showing which prime of bn + 1 falls short.
  std::optional<DivisibilityVerdict> certificate;
};

inline constexpr std::uint64_t kDefaultFabCap = 10'000'000;

// Scans n = 1, 2, ... up to min(n_cap, bound). n_cap defaults to 10^7.
FabResult f_ab(std::uint64_t a, std::uint64_t b, std::optional<std::uint64_t> n_cap = {},
               const Limits& limits = default_limits());

struct WitnessResidue {
  std::uint64_t r = 0;
  Natural n;        // (p^{r phi(a)} - 1)/a
  Natural residue;  // binom(an, bn + beta) mod p, always 1 or p - 1
};

std::vector<WitnessResidue> thm1_witness_family(std::uint64_t a, std::uint64_t b,
                                                std::int64_t beta, const Natural& p,
                                                std::uint64_t r_max,
                                                const Limits& limits = default_limits());

// Counts of binom(an + alpha, bn + beta) mod p over 1 <= n <= n_max, index =
// residue. Terms with bottom outside [0, top] are skipped.
std::vector<std::uint64_t> residue_histogram(std::uint64_t a, std::uint64_t b,
                                             std::int64_t alpha, std::int64_t beta,
                                             const Natural& p, std::uint64_t n_max,
                                             const Limits& limits = default_limits());

struct CongruenceCheck {
  std::string label;  // e.g. "binom(12n,3n) mod 6n-1"
  std::uint64_t m = 0;
  std::uint64_t k = 0;
  Natural modulus;
  bool holds = false;
};

struct Thm3Verdict {
  std::uint64_t n = 0;
  std::vector<CongruenceCheck> checks;

  bool all_hold() const;
};

Thm3Verdict verify_thm3(std::uint64_t n, const Limits& limits = default_limits());

struct Conj2Witness {
  std::uint64_t a = 0;
  std::uint64_t b = 0;
  std::uint64_t p = 0;  // prime dividing 3n - 1
  std::uint64_t n = 0;
  std::int64_t valuation = 0;  // v_p(binom((a+b)n, an)) - v_p(3n - 1) < 0
};

// A prime p and n making binom((a+b)n, an)/(3n - 1) non-integral at p.
// Primes p = 2 (mod 3), p <= p_cap, with n = (p + 1)/3 are tried first in
// ascending order; failing that, every n with 3n - 1 <= p_cap and every
// prime factor of 3n - 1. ExhaustedError if neither finds one.
Conj2Witness conj2_witness(std::uint64_t a, std::uint64_t b, std::uint64_t p_cap,
                           const Limits& limits = default_limits());

// Re-derives a witness from scratch: p prime, p | 3n - 1, and the Kummer
// carry count of an + bn in base p falls short of v_p(3n - 1).
bool revalidate(const Conj2Witness& w, const Limits& limits = default_limits());

struct PrimeWindowEntry {
  std::uint64_t x = 0;
  std::optional<std::uint64_t> witness_prime;
};

struct PrimeWindowReport {
  std::uint64_t x_lo = 0;
  std::uint64_t x_hi = 0;
  std::vector<PrimeWindowEntry> entries;
  std::vector<std::uint64_t> failures;  // x with no prime = 2 (mod 3) in (x, 20x/19)
};

PrimeWindowReport lemma_p2_verify(std::uint64_t x_lo, std::uint64_t x_hi,
                                  const Limits& limits = default_limits());

// theta(x; 3, 2) enclosed in [lower, upper] by directed rounding.
struct ThetaValue {
  std::uint64_t x = 0;
  long double lower = 0;
  long double upper = 0;
  std::string decimal;  // 30 significant digits of the lower end
  // For x >= 3761: 0.49 x < theta < 0.51 x holds for the whole interval.
  std::optional<bool> in_window;
};

ThetaValue chebyshev_theta_3_2(std::uint64_t x, const Limits& limits = default_limits());

// binom(an+bn, an)/(bn+1) = binom(an+bn, an-1) - ((a+b)/a) binom(an+bn-1, an-2),
// checked in exact rationals.
bool verify_decomposition(std::uint64_t a, std::uint64_t b, std::uint64_t n,
                          const Limits& limits = default_limits());

// Least n <= n_max with (pn - 1) not dividing binom(an, bn).
std::optional<std::uint64_t> conj_oddp_search(std::uint64_t p, std::uint64_t a,
                                              std::uint64_t b, std::uint64_t n_max,
                                              const Limits& limits = default_limits());

// Whether (an - 1) | binom(amn, bn) for every 1 <= n <= n_max.
bool oddp2_survives(std::uint64_t m, std::uint64_t a, std::uint64_t b, std::uint64_t n_max,
                    const Limits& limits = default_limits());

// Pairs (a, b), a <= a_max, b <= b_max, am > b, surviving every n <= n_max.
// a = 1 never survives: the modulus an - 1 vanishes at n = 1.
std::vector<std::pair<std::uint64_t, std::uint64_t>> conj_oddp2_search(
    std::uint64_t m, std::uint64_t a_max, std::uint64_t b_max, std::uint64_t n_max,
    const Limits& limits = default_limits());

}  // namespace divcert
