#include <gtest/gtest.h>

#include <numeric>
#include <random>
#include <thread>

#include "divcert/arith.hpp"
#include "divcert/errors.hpp"
#include "oracles.hpp"

using namespace divcert;

namespace {

Natural N(std::uint64_t v) { return Natural(v); }

std::vector<std::pair<std::uint64_t, std::uint64_t>> as_pairs(const Factorization& f) {
  std::vector<std::pair<std::uint64_t, std::uint64_t>> out;
  for (const auto& pp : f.factors) out.emplace_back(pp.prime.get_ui(), pp.exponent);
  return out;
}

}  // namespace

TEST(Gcd, Examples) {
  EXPECT_EQ(gcd(N(12), N(8)), 4);
  EXPECT_EQ(gcd(N(264), N(199)), 1);
  EXPECT_EQ(gcd(N(7), N(0)), 7);
  for (std::uint64_t a = 1; a < 50; ++a) EXPECT_EQ(gcd(N(a), N(1)), 1);
  EXPECT_THROW(gcd(N(0), N(0)), DomainError);
}

TEST(Totient, Examples) {
  EXPECT_EQ(totient(N(1)), 1);
  EXPECT_EQ(totient(N(43)), 42);
  EXPECT_EQ(totient(N(111)), 72);
  EXPECT_THROW(totient(N(0)), DomainError);
}

TEST(Totient, MatchesGcdCount) {
  for (std::uint64_t n = 1; n <= 400; ++n) EXPECT_EQ(totient(N(n)), oracle::totient(n)) << n;
}

TEST(MultiplicativeOrder, Examples) {
  EXPECT_EQ(multiplicative_order(N(7), N(43)), 6);
  EXPECT_EQ(multiplicative_order(N(11), N(111)), 6);
  for (std::uint64_t p : {3, 5, 7, 11, 13}) EXPECT_EQ(multiplicative_order(N(p), N(2)), 1);
  EXPECT_THROW(multiplicative_order(N(6), N(9)), DomainError);
}

TEST(MultiplicativeOrder, DividesTotientAndMatchesBruteForce) {
  for (std::uint64_t m = 2; m <= 500; ++m) {
    const Natural phi = totient(N(m));
    for (std::uint64_t p : oracle::primes_up_to(100)) {
      if (std::gcd(p, m) != 1) continue;
      const Natural s = multiplicative_order(N(p), N(m));
      EXPECT_EQ(phi % s, 0) << p << " mod " << m;
      EXPECT_EQ(s, oracle::order(p, m)) << p << " mod " << m;
    }
  }
}

TEST(EulerTotientTheorem, PowerIsOne) {
  for (std::uint64_t s = 2; s <= 200; ++s) {
    const Natural phi = totient(N(s));
    for (std::uint64_t p : oracle::primes_up_to(50)) {
      if (s % p == 0) continue;
      mpz_class r;
      mpz_powm(r.get_mpz_t(), N(p).get_mpz_t(), phi.get_mpz_t(), N(s).get_mpz_t());
      EXPECT_EQ(r, 1) << p << "^phi(" << s << ")";
    }
  }
}

TEST(Sieve, Examples) {
  EXPECT_EQ(primes_up_to(10), (std::vector<std::uint64_t>{2, 3, 5, 7}));
  EXPECT_EQ(primes_up_to(2), (std::vector<std::uint64_t>{2}));
  // 522 is the count up to 3760; 3761 itself is prime.
  EXPECT_EQ(primes_up_to(3761).size(), 523u);
  EXPECT_EQ(primes_up_to(3760).size(), 522u);
  EXPECT_EQ(primes_up_to(3761), oracle::primes_up_to(3761));
}

TEST(Sieve, OverBudgetIsRejected) {
  Limits small;
  small.sieve_limit = 1000;
  EXPECT_THROW(primes_up_to(1001, small), ResourceError);
}

TEST(Sieve, ConcurrentGrowthGivesConsistentAnswers) {
  std::vector<std::thread> pool;
  std::vector<std::size_t> counts(8);
  for (int t = 0; t < 8; ++t) {
    pool.emplace_back([t, &counts] { counts[t] = primes_up_to(100'000 + 50'000 * t).size(); });
  }
  for (auto& th : pool) th.join();
  for (int t = 0; t < 8; ++t) {
    EXPECT_EQ(counts[t], primes_up_to(100'000 + 50'000 * t).size());
  }
  EXPECT_EQ(primes_up_to(100'000).size(), 9592u);
}

TEST(IsPrime, Examples) {
  EXPECT_TRUE(is_prime(N(199)));
  EXPECT_FALSE(is_prime(N(1)));
  EXPECT_FALSE(is_prime(N(0)));
  EXPECT_TRUE(is_prime(N(3761)));
  EXPECT_FALSE(is_prime(N(3763)));  // 53 * 71
}

TEST(IsPrime, MatchesTrialDivision) {
  for (std::uint64_t n = 0; n <= 20000; ++n) EXPECT_EQ(is_prime(N(n)), oracle::is_prime(n)) << n;
}

TEST(IsPrime, LargeValues) {
  EXPECT_TRUE(is_prime(Natural("18446744073709551557")));   // largest prime below 2^64
  EXPECT_FALSE(is_prime(Natural("3825123056546413051")));   // strong pseudoprime to bases 2..23
  EXPECT_TRUE(is_prime(Natural("1000000000000000000000007")));
}

TEST(Factorize, Examples) {
  using V = std::vector<std::pair<std::uint64_t, std::uint64_t>>;
  EXPECT_EQ(as_pairs(factorize(N(126))), (V{{2, 1}, {3, 2}, {7, 1}}));
  EXPECT_TRUE(factorize(N(1)).empty());
  EXPECT_EQ(as_pairs(factorize(N(10045))), (V{{5, 1}, {7, 2}, {41, 1}}));
  EXPECT_EQ(as_pairs(factorize(N(99999989))), (V{{99999989, 1}}));
  EXPECT_THROW(factorize(N(0)), DomainError);
}

TEST(Factorize, CeilingIsEnforced) {
  Limits small;
  small.factor_ceiling = 1000;
  EXPECT_THROW(factorize(N(1001), small), ResourceError);
  EXPECT_NO_THROW(factorize(N(1000), small));
}

TEST(Factorize, InvariantsOnRandomInputs) {
  std::mt19937_64 rng(20240917);
  for (int i = 0; i < 2000; ++i) {
    const std::uint64_t n = 1 + rng() % 100'000'000;
    const Factorization f = factorize(N(n));
    Natural product = 1;
    Natural prev = 1;
    for (const auto& pp : f.factors) {
      EXPECT_GT(pp.prime, prev);
      EXPECT_GE(pp.exponent, 1u);
      EXPECT_TRUE(oracle::is_prime(pp.prime.get_ui()));
      mpz_class power;
      mpz_pow_ui(power.get_mpz_t(), pp.prime.get_mpz_t(), pp.exponent);
      product *= power;
      prev = pp.prime;
    }
    EXPECT_EQ(product, n);
    EXPECT_EQ(f.value, n);
  }
}

TEST(Legendre, Examples) {
  EXPECT_EQ(legendre_valuation_factorial(N(10), N(2)), 8u);
  EXPECT_EQ(legendre_valuation_factorial(N(4), N(5)), 0u);
  EXPECT_EQ(legendre_valuation_factorial(N(43 * 279), N(5)), 2995u);
  EXPECT_THROW(legendre_valuation_factorial(N(10), N(4)), DomainError);
}

TEST(Legendre, MatchesBruteForceSum) {
  for (std::uint64_t p : oracle::primes_up_to(50)) {
    std::uint64_t running = 0;
    for (std::uint64_t n = 1; n <= 300; ++n) {
      running += oracle::vp(n, p);
      EXPECT_EQ(legendre_valuation_factorial(N(n), N(p)), running) << n << "! at " << p;
    }
  }
}

TEST(BinomValuation, Examples) {
  auto c = binom_valuation(N(4), N(2), N(5));
  EXPECT_EQ(c.valuation, 0);
  EXPECT_EQ(c.carry_count, 0);
  // 252 = 2^2 3^2 7
  c = binom_valuation(N(10), N(5), N(3));
  EXPECT_EQ(c.valuation, 2);
  EXPECT_EQ(c.carry_count, 2);
  EXPECT_EQ(binom_valuation(N(17), N(0), N(3)).valuation, 0);
  EXPECT_THROW(binom_valuation(N(3), N(4), N(2)), DomainError);
}

TEST(BinomValuation, MatchesFactoredBinomialAndKummer) {
  const auto primes = oracle::primes_up_to(50);
  for (std::uint64_t m = 0; m <= 500; ++m) {
    for (std::uint64_t k = 0; k <= m; ++k) {
      const mpz_class b = oracle::binom(m, k);
      for (std::uint64_t p : primes) {
        const auto c = binom_valuation(N(m), N(k), N(p));
        ASSERT_EQ(c.valuation, static_cast<std::int64_t>(oracle::vp(b, p)))
            << "binom(" << m << "," << k << ") at " << p;
        ASSERT_EQ(c.valuation, c.carry_count);
      }
    }
  }
}

TEST(BinomValuation, AgreesWithFactorizationOfBinomExact) {
  for (std::uint64_t m = 0; m <= 60; ++m) {
    for (std::uint64_t k = 0; k <= m; ++k) {
      const Natural b = binom_exact(N(m), N(k));
      for (const auto& pp : factorize(b, Limits{.factor_ceiling = ~0ULL}).factors) {
        EXPECT_EQ(binom_valuation(N(m), N(k), pp.prime).valuation,
                  static_cast<std::int64_t>(pp.exponent));
      }
    }
  }
}

TEST(BaseDigits, Examples) {
  EXPECT_EQ(base_p_digits(N(10), N(3)), (std::vector<Natural>{1, 0, 1}));
  EXPECT_EQ(base_p_digits(N(0), N(7)), (std::vector<Natural>{0}));
  EXPECT_EQ(base_p_digits(N(6), N(7)), (std::vector<Natural>{6}));
}

TEST(Lucas, Examples) {
  EXPECT_EQ(lucas_binom_mod_p(N(10), N(5), N(3)), 0);
  EXPECT_EQ(lucas_binom_mod_p(N(123), N(0), N(7)), 1);
  // binom(p^t - 1, k) = (-1)^{digit sum of k} mod p
  for (std::uint64_t p : {3, 5, 7}) {
    const std::uint64_t m = p * p * p - 1;
    for (std::uint64_t k = 0; k <= m; ++k) {
      std::uint64_t s = 0;
      for (std::uint64_t x = k; x > 0; x /= p) s += x % p;
      EXPECT_EQ(lucas_binom_mod_p(N(m), N(k), N(p)), s % 2 == 0 ? 1 : p - 1);
    }
  }
}

TEST(Lucas, MatchesDirectResidue) {
  for (std::uint64_t p : {2, 3, 5, 7, 11, 13}) {
    for (std::uint64_t m = 0; m <= 2000; m += (m < 300 ? 1 : 7)) {
      for (std::uint64_t k = 0; k <= m; ++k) {
        mpz_class r = oracle::binom(m, k) % p;
        ASSERT_EQ(lucas_binom_mod_p(N(m), N(k), N(p)), r) << m << " " << k << " " << p;
      }
    }
  }
}

TEST(BinomExact, Examples) {
  EXPECT_EQ(binom_exact(N(12), N(3)), 220);
  EXPECT_EQ(binom_exact(N(30), N(5)), 142506);
  EXPECT_EQ(binom_exact(N(77), N(77)), 1);
  EXPECT_EQ(binom_exact(N(300), N(150)), oracle::binom(300, 150));
  Limits small;
  small.binom_exact_max = 100;
  EXPECT_THROW(binom_exact(N(101), N(3), small), ResourceError);
}

TEST(DividesBinomial, Examples) {
  EXPECT_TRUE(divides_binomial(N(12), N(3), N(5)).divides);
  const auto no = divides_binomial(N(4), N(2), N(5));
  EXPECT_FALSE(no.divides);
  ASSERT_EQ(no.certificates.size(), 1u);
  EXPECT_EQ(no.certificates[0].valuation, 0);
  EXPECT_EQ(no.required[0], 1u);
  EXPECT_TRUE(divides_binomial(N(9), N(4), N(1)).divides);
}

TEST(DividesBinomial, MatchesExactResidue) {
  for (std::uint64_t m = 0; m <= 200; m += 3) {
    for (std::uint64_t k = 0; k <= m; k += 2) {
      const mpz_class b = oracle::binom(m, k);
      for (std::uint64_t d = 1; d <= 1000; ++d) {
        ASSERT_EQ(divides_binomial(N(m), N(k), N(d)).divides, b % d == 0)
            << m << " " << k << " " << d;
      }
    }
  }
}

TEST(Radical, Examples) {
  EXPECT_EQ(radical(N(1)), 1);
  EXPECT_EQ(radical(N(72)), 6);
  EXPECT_EQ(radical(N(10045)), 5 * 7 * 41);
}

TEST(ToU64, RejectsLargeValues) {
  EXPECT_EQ(to_u64(Natural("18446744073709551615")), 18446744073709551615ULL);
  EXPECT_THROW(to_u64(Natural("18446744073709551616")), ResourceError);
}
