#include "divcert/divisibility.hpp"

#include <mpfr.h>

#include <algorithm>
#include <memory>
#include <string>

#include "divcert/errors.hpp"

namespace divcert {

namespace {

Natural nat(std::uint64_t v) { return Natural(v); }

Natural pow(const Natural& base, std::uint64_t e) {
  Natural r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

// binom((a+b)n, an) divisible by bn + 1.
bool fab_divides(std::uint64_t a, std::uint64_t b, std::uint64_t n, const Limits& limits,
                 DivisibilityVerdict* detail) {
  const Natural nn = nat(n);
  auto verdict = divides_binomial(nat(a + b) * nn, nat(a) * nn, nat(b) * nn + 1, limits);
  const bool ok = verdict.divides;
  if (detail != nullptr) *detail = std::move(verdict);
  return ok;
}

struct MpfrGuard {
  mpfr_t v;
  explicit MpfrGuard(mpfr_prec_t prec) { mpfr_init2(v, prec); }
  ~MpfrGuard() { mpfr_clear(v); }
  MpfrGuard(const MpfrGuard&) = delete;
  MpfrGuard& operator=(const MpfrGuard&) = delete;
};

}  // namespace

std::string to_string(FabVerdict v) {
  switch (v) {
    case FabVerdict::found: return "found";
    case FabVerdict::proven_zero: return "proven_zero";
    case FabVerdict::inconclusive: return "inconclusive";
  }
  return "unknown";
}

bool verify_thm0(std::uint64_t a, std::uint64_t b, std::uint64_t n, const Limits& limits) {
  if (a == 0 || b == 0 || n == 0) throw DomainError("verify_thm0: a, b, n must be >= 1");
  const Natural bn1 = nat(b) * nat(n) + 1;
  const Natural modulus = bn1 / gcd(nat(a), bn1);
  return divides_binomial(nat(a + b) * nat(n), nat(a) * nat(n), modulus, limits).divides;
}

std::optional<TheoremBound> theorem2_bound(std::uint64_t a, std::uint64_t b,
                                           const Limits& limits) {
  if (a == 0 || b == 0) throw DomainError("theorem2_bound: a, b must be >= 1");
  const Natural nb = nat(b);
  for (const auto& f : factorize(nat(a), limits).factors) {
    if (nb % f.prime == 0) continue;
    TheoremBound out;
    out.p = f.prime;
    const Natural sum = nat(a + b);
    out.phi = totient(sum, limits);
    out.s = sum == 1 ? Natural(1) : multiplicative_order(out.p, sum, limits);
    const Natural ps_minus_1 = pow(out.p, to_u64(out.s)) - 1;
    check_invariant(ps_minus_1 % sum == 0, "theorem2_bound: a + b does not divide p^s - 1");
    check_invariant(out.phi % out.s == 0, "theorem2_bound: s does not divide phi(a + b)");
    out.bound = ps_minus_1 / sum;
    return out;
  }
  return std::nullopt;
}

FabResult f_ab(std::uint64_t a, std::uint64_t b, std::optional<std::uint64_t> n_cap,
               const Limits& limits) {
  if (a == 0 || b == 0) throw DomainError("f_ab: a, b must be >= 1");
  FabResult result;
  result.a = a;
  result.b = b;
  result.bound = theorem2_bound(a, b, limits);
  if (!result.bound) {
    // rad(a) | b makes gcd(a, bn + 1) = 1 for every n, so the
    // (bn + 1)/gcd(a, bn + 1) congruence covers bn + 1 itself for every n.
    result.verdict = FabVerdict::proven_zero;
    return result;
  }
  std::uint64_t limit = n_cap.value_or(kDefaultFabCap);
  const bool bound_binds = result.bound->bound <= nat(limit);
  if (bound_binds) limit = to_u64(result.bound->bound);

  for (std::uint64_t n = 1; n <= limit; ++n) {
    DivisibilityVerdict detail;
    if (!fab_divides(a, b, n, limits, &detail)) {
      result.verdict = FabVerdict::found;
      result.n = n;
      result.certificate = std::move(detail);
      return result;
    }
  }
  check_invariant(!bound_binds, "f_ab: no failure up to the proven bound for (" +
                                    std::to_string(a) + ", " + std::to_string(b) + ")");
  result.verdict = FabVerdict::inconclusive;
  result.n = limit;
  return result;
}

std::vector<WitnessResidue> thm1_witness_family(std::uint64_t a, std::uint64_t b,
                                                std::int64_t beta, const Natural& p,
                                                std::uint64_t r_max, const Limits& limits) {
  if (!(a > b && b >= 1)) throw DomainError("thm1_witness_family: need a > b >= 1");
  if (!is_prime(p, limits)) throw DomainError("thm1_witness_family: p must be prime");
  if (gcd(p, nat(a)) != 1) throw DomainError("thm1_witness_family: p divides a");
  const std::uint64_t phi = to_u64(totient(nat(a), limits));
  std::vector<WitnessResidue> out;
  for (std::uint64_t r = 1; r <= r_max; ++r) {
    const Natural top_plus_1 = pow(p, r * phi);
    check_invariant((top_plus_1 - 1) % a == 0, "thm1_witness_family: a does not divide p^{r phi(a)} - 1");
    const Natural n = (top_plus_1 - 1) / a;
    const Natural top = nat(a) * n;
    const Natural bottom = nat(b) * n + Int(static_cast<long>(beta));
    if (!(top > bottom && bottom > 0)) continue;
    WitnessResidue w{r, n, lucas_binom_mod_p(top, bottom, p, limits)};
    check_invariant(w.residue == 1 || w.residue == p - 1,
                    "thm1_witness_family: residue " + w.residue.get_str() + " is not +-1");
    out.push_back(std::move(w));
  }
  return out;
}

std::vector<std::uint64_t> residue_histogram(std::uint64_t a, std::uint64_t b,
                                             std::int64_t alpha, std::int64_t beta,
                                             const Natural& p, std::uint64_t n_max,
                                             const Limits& limits) {
  if (!is_prime(p, limits)) throw DomainError("residue_histogram: p must be prime");
  std::vector<std::uint64_t> counts(to_u64(p), 0);
  for (std::uint64_t n = 1; n <= n_max; ++n) {
    const Int top = nat(a) * nat(n) + Int(static_cast<long>(alpha));
    const Int bottom = nat(b) * nat(n) + Int(static_cast<long>(beta));
    if (top < 0 || bottom < 0 || bottom > top) continue;
    ++counts[to_u64(lucas_binom_mod_p(top, bottom, p, limits))];
  }
  return counts;
}

bool Thm3Verdict::all_hold() const {
  return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.holds; });
}

Thm3Verdict verify_thm3(std::uint64_t n, const Limits& limits) {
  if (n == 0) throw DomainError("verify_thm3: n must be >= 1");
  Thm3Verdict verdict;
  verdict.n = n;
  auto single = [&](const char* label, std::uint64_t m, std::uint64_t k, std::uint64_t c) {
    const Natural modulus = nat(c * n - 1);
    const bool holds = divides_binomial(nat(m * n), nat(k * n), modulus, limits).divides;
    verdict.checks.push_back({label, m * n, k * n, modulus, holds});
  };
  single("binom(6n,3n) mod 2n-1", 6, 3, 2);
  single("binom(2n,n) mod 2n-1", 2, 1, 2);
  single("binom(12n,3n) mod 6n-1", 12, 3, 6);
  single("binom(12n,4n) mod 6n-1", 12, 4, 6);
  {
    const Natural lhs = nat(10 * n - 1);
    const Natural rhs = nat(15 * n - 1);
    check_invariant(gcd(lhs, rhs) == 1, "verify_thm3: gcd(10n-1, 15n-1) != 1");
    const Factorization modulus = multiply(factorize(lhs, limits), factorize(rhs, limits));
    const bool holds = divides_binomial(nat(30 * n), nat(5 * n), modulus, limits).divides;
    verdict.checks.push_back(
        {"binom(30n,5n) mod (10n-1)(15n-1)", 30 * n, 5 * n, modulus.value, holds});
  }
  single("binom(60n,6n) mod 30n-1", 60, 6, 30);
  single("binom(120n,40n) mod 30n-1", 120, 40, 30);
  single("binom(120n,45n) mod 30n-1", 120, 45, 30);
  single("binom(330n,88n) mod 66n-1", 330, 88, 66);
  return verdict;
}

Conj2Witness conj2_witness(std::uint64_t a, std::uint64_t b, std::uint64_t p_cap,
                           const Limits& limits) {
  if (a == 0 || b == 0) throw DomainError("conj2_witness: a, b must be >= 1");
  const auto primes = primes_up_to(p_cap, limits);
  for (std::uint64_t p : primes) {
    if (p % 3 != 2) continue;
    const std::uint64_t n = (p + 1) / 3;
    const Natural np = nat(p);
    const auto cert = binom_valuation(nat(a + b) * nat(n), nat(a) * nat(n), np, limits);
    const std::int64_t v = cert.valuation - static_cast<std::int64_t>(valuation(nat(3 * n - 1), np));
    if (v < 0) return {a, b, p, n, v};
  }
  // Some pairs, e.g. a = b = 2, have no witness with 3n - 1 prime: 2n + 2n
  // always carries in base 3n - 1. Fall back to any n with 3n - 1 <= p_cap
  // and any prime p dividing 3n - 1.
  for (std::uint64_t n = 1; 3 * n - 1 <= p_cap; ++n) {
    for (const auto& f : factorize(nat(3 * n - 1), limits).factors) {
      const auto cert = binom_valuation(nat(a + b) * nat(n), nat(a) * nat(n), f.prime, limits);
      const std::int64_t v = cert.valuation - static_cast<std::int64_t>(f.exponent);
      if (v < 0) return {a, b, to_u64(f.prime), n, v};
    }
  }
  throw ExhaustedError("conj2_witness: no witness for (" + std::to_string(a) + ", " +
                       std::to_string(b) + ") with 3n - 1 <= " + std::to_string(p_cap));
}

bool revalidate(const Conj2Witness& w, const Limits& limits) {
  const Natural p = nat(w.p);
  if (w.n == 0 || !is_prime(p, limits) || (3 * w.n - 1) % w.p != 0) return false;
  const Natural m = nat(w.a + w.b) * nat(w.n);
  const Natural k = nat(w.a) * nat(w.n);
  // Kummer: v_p(binom(m, k)) is the number of carries adding k and m - k
  // in base p.
  const auto dk = base_p_digits(k, p);
  const auto dr = base_p_digits(m - k, p);
  std::int64_t carries = 0;
  Natural carry = 0;
  for (std::size_t i = 0; i < std::max(dk.size(), dr.size()) || carry != 0; ++i) {
    const Natural s = (i < dk.size() ? dk[i] : Natural(0)) +
                      (i < dr.size() ? dr[i] : Natural(0)) + carry;
    carry = s >= p ? 1 : 0;
    carries += carry == 1 ? 1 : 0;
  }
  std::int64_t need = 0;
  for (std::uint64_t r = 3 * w.n - 1; r % w.p == 0; r /= w.p) ++need;
  return carries - need == w.valuation && w.valuation < 0;
}

PrimeWindowReport lemma_p2_verify(std::uint64_t x_lo, std::uint64_t x_hi,
                                  const Limits& limits) {
  if (x_lo < 2 || x_lo > x_hi) throw DomainError("lemma_p2_verify: need 2 <= x_lo <= x_hi");
  PrimeWindowReport report;
  report.x_lo = x_lo;
  report.x_hi = x_hi;
  std::vector<std::uint64_t> candidates;
  for (std::uint64_t p : primes_up_to(20 * x_hi / 19 + 1, limits)) {
    if (p % 3 == 2) candidates.push_back(p);
  }
  for (std::uint64_t x = x_lo; x <= x_hi; ++x) {
    PrimeWindowEntry entry{x, std::nullopt};
    auto it = std::upper_bound(candidates.begin(), candidates.end(), x);
    if (it != candidates.end() && 19 * *it < 20 * x) entry.witness_prime = *it;
    if (!entry.witness_prime) report.failures.push_back(x);
    report.entries.push_back(entry);
  }
  return report;
}

ThetaValue chebyshev_theta_3_2(std::uint64_t x, const Limits& limits) {
  if (x < 2) throw DomainError("chebyshev_theta_3_2: x must be >= 2");
  constexpr mpfr_prec_t kPrec = 128;
  MpfrGuard lo(kPrec), hi(kPrec), term(kPrec);
  mpfr_set_zero(lo.v, 1);
  mpfr_set_zero(hi.v, 1);
  for (std::uint64_t p : primes_up_to(x, limits)) {
    if (p % 3 != 2) continue;
    mpfr_log_ui(term.v, p, MPFR_RNDD);
    mpfr_add(lo.v, lo.v, term.v, MPFR_RNDD);
    mpfr_log_ui(term.v, p, MPFR_RNDU);
    mpfr_add(hi.v, hi.v, term.v, MPFR_RNDU);
  }
  ThetaValue out;
  out.x = x;
  out.lower = mpfr_get_ld(lo.v, MPFR_RNDD);
  out.upper = mpfr_get_ld(hi.v, MPFR_RNDU);
  char* text = nullptr;
  mpfr_asprintf(&text, "%.30Rg", lo.v);
  out.decimal = text;
  mpfr_free_str(text);

  if (x >= 3761) {
    // 100 * lower > 49 x and 100 * upper < 51 x, compared exactly.
    mpfr_mul_ui(term.v, lo.v, 100, MPFR_RNDD);
    const bool above = mpfr_cmp_ui(term.v, 49 * x) > 0;
    mpfr_mul_ui(term.v, hi.v, 100, MPFR_RNDU);
    const bool below = mpfr_cmp_ui(term.v, 51 * x) < 0;
    out.in_window = above && below;
    check_invariant(*out.in_window, "chebyshev_theta_3_2: theta(" + std::to_string(x) +
                                        "; 3, 2) outside (0.49x, 0.51x)");
  }
  return out;
}

bool verify_decomposition(std::uint64_t a, std::uint64_t b, std::uint64_t n,
                          const Limits& limits) {
  if (a == 0 || b == 0 || n == 0 || a * n < 2) {
    throw DomainError("verify_decomposition: need a, b, n >= 1 and an >= 2");
  }
  const Natural an = nat(a * n);
  const Natural bn = nat(b * n);
  const Rational lhs(binom_exact(an + bn, an, limits), bn + 1);
  Rational rhs(binom_exact(an + bn, an - 1, limits));
  rhs -= Rational(nat(a + b), nat(a)) * Rational(binom_exact(an + bn - 1, an - 2, limits));
  Rational l = lhs;
  l.canonicalize();
  rhs.canonicalize();
  return l == rhs;
}

std::optional<std::uint64_t> conj_oddp_search(std::uint64_t p, std::uint64_t a,
                                              std::uint64_t b, std::uint64_t n_max,
                                              const Limits& limits) {
  if (p < 3 || !is_prime(nat(p), limits)) throw DomainError("conj_oddp_search: p must be an odd prime");
  if (!(a > b && b >= 1)) throw DomainError("conj_oddp_search: need a > b >= 1");
  for (std::uint64_t n = 1; n <= n_max; ++n) {
    if (!divides_binomial(nat(a) * nat(n), nat(b) * nat(n), nat(p) * nat(n) - 1, limits).divides) {
      return n;
    }
  }
  return std::nullopt;
}

bool oddp2_survives(std::uint64_t m, std::uint64_t a, std::uint64_t b, std::uint64_t n_max,
                    const Limits& limits) {
  if (m == 0 || a == 0 || b == 0) throw DomainError("oddp2_survives: m, a, b must be >= 1");
  if (a * m <= b) return false;
  if (a == 1) return false;
  for (std::uint64_t n = 1; n <= n_max; ++n) {
    const Natural nn = nat(n);
    if (!divides_binomial(nat(a * m) * nn, nat(b) * nn, nat(a) * nn - 1, limits).divides) {
      return false;
    }
  }
  return true;
}

std::vector<std::pair<std::uint64_t, std::uint64_t>> conj_oddp2_search(
    std::uint64_t m, std::uint64_t a_max, std::uint64_t b_max, std::uint64_t n_max,
    const Limits& limits) {
  if (m == 0) throw DomainError("conj_oddp2_search: m must be >= 1");
  std::vector<std::pair<std::uint64_t, std::uint64_t>> survivors;
  for (std::uint64_t a = 2; a <= a_max; ++a) {
    for (std::uint64_t b = 1; b <= b_max && b < a * m; ++b) {
      if (oddp2_survives(m, a, b, n_max, limits)) survivors.emplace_back(a, b);
    }
  }
  return survivors;
}

}  // namespace divcert
