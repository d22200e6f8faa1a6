// Acceptance run: one PASS/FAIL line per criterion, non-zero exit if any
// criterion fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <numeric>
#include <random>
#include <sstream>
#include <string>

#include "divcert/arith.hpp"
#include "divcert/divisibility.hpp"
#include "divcert/qdivisibility.hpp"
#include "divcert/qpoly.hpp"
#include "oracles.hpp"

using namespace divcert;

namespace {

// Collects the first few mismatches of one criterion.
struct Check {
  std::ostringstream why;
  int failures = 0;

  void expect(bool ok, const std::string& what) {
    if (ok) return;
    if (failures++ < 3) why << (failures > 1 ? "; " : "") << what;
  }
};

bool run(int id, const std::string& title, const std::function<void(Check&)>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Check c;
  try {
    body(c);
  } catch (const std::exception& e) {
    c.expect(false, std::string("exception: ") + e.what());
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::printf("%s %2d %s (%.1f s)%s%s\n", c.failures == 0 ? "PASS" : "FAIL", id, title.c_str(),
              secs, c.failures == 0 ? "" : ": ", c.why.str().c_str());
  std::fflush(stdout);
  return c.failures == 0;
}

std::string str(std::uint64_t a, std::uint64_t b) {
  return "(" + std::to_string(a) + "," + std::to_string(b) + ")";
}

std::string str(std::uint64_t a, std::uint64_t b, std::uint64_t c) {
  return "(" + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c) + ")";
}

// Carries when adding k and m - k in base p.
std::int64_t carries(std::uint64_t m, std::uint64_t k, std::uint64_t p) {
  std::uint64_t x = k;
  std::uint64_t y = m - k;
  std::uint64_t carry = 0;
  std::int64_t count = 0;
  while (x > 0 || y > 0 || carry > 0) {
    carry = (x % p + y % p + carry) >= p ? 1 : 0;
    count += static_cast<std::int64_t>(carry);
    x /= p;
    y /= p;
  }
  return count;
}

// [m, k]_q for all k by the q-Pascal recurrence on plain vectors.
std::vector<oracle::Poly> qpascal_row(std::uint64_t m) {
  std::vector<oracle::Poly> row{{1}};
  for (std::uint64_t i = 1; i <= m; ++i) {
    std::vector<oracle::Poly> next(i + 1);
    next[0] = {1};
    next[i] = {1};
    for (std::uint64_t j = 1; j < i; ++j) {
      // [i, j] = [i-1, j-1] + q^j [i-1, j]
      oracle::Poly p = row[j - 1];
      p.resize(std::max(p.size(), row[j].size() + j), 0);
      for (std::size_t t = 0; t < row[j].size(); ++t) p[t + j] += row[j][t];
      next[j] = std::move(p);
    }
    row = std::move(next);
  }
  return row;
}

oracle::Poly plain(const IntPoly& p) {
  return {p.coeffs().begin(), p.coeffs().end()};
}

// Expanded value at q = 1 against the exact rational value of the quotient.
void q_one(Check& c, const QuotientExpr& e, const std::string& what, const Limits& limits) {
  const IntPoly p = expand(expr_factorization(e), limits);
  const Rational v = e.value_at_one(limits);
  c.expect(v.get_den() == 1 && v > 0 && p.eval_at_one() == v.get_num(), what);
}

}  // namespace

int main() {
  Limits base = default_limits();
  bool all = true;

  all &= run(1, "f-value regression", [](Check& c) {
    struct Row {
      std::uint64_t a, b, f;
    };
    for (const Row& r : {Row{7, 36, 279}, Row{10, 192, 362}, Row{11, 100, 1187},
                         Row{22, 200, 6462}}) {
      const auto res = f_ab(r.a, r.b);
      c.expect(res.verdict == FabVerdict::found && res.n == r.f,
               "f" + str(r.a, r.b) + " = " + std::to_string(res.n));
      c.expect(oracle::binom((r.a + r.b) * res.n, r.a * res.n) % (r.b * res.n + 1) != 0,
               "f" + str(r.a, r.b) + " is not a failure");
    }
  });

  all &= run(2, "theorem bound regression", [](Check& c) {
    struct Row {
      std::uint64_t a, b, p;
      const char* bound;
    };
    for (const Row& r : {Row{7, 36, 7, "2736"}, Row{11, 100, 11, "15960"},
                         Row{22, 200, 11, "7980"}, Row{10, 192, 5, "1475362494440362"}}) {
      const auto tb = theorem2_bound(r.a, r.b);
      c.expect(tb && tb->p == r.p && tb->bound == Natural(r.bound), "bound" + str(r.a, r.b));
      const auto f = f_ab(r.a, r.b);
      c.expect(tb && Natural(f.n) <= tb->bound, "f above bound at " + str(r.a, r.b));
    }
  });

  all &= run(3, "integer divisibility grid a,b <= 20, n <= 50", [](Check& c) {
    for (std::uint64_t a = 1; a <= 20; ++a) {
      for (std::uint64_t b = 1; b <= 20; ++b) {
        for (std::uint64_t n = 1; n <= 50; ++n) c.expect(verify_thm0(a, b, n), str(a, b, n));
      }
    }
  });

  all &= run(4, "congruence families n <= 200", [](Check& c) {
    for (std::uint64_t n = 1; n <= 200; ++n) {
      const auto v = verify_thm3(n);
      c.expect(v.checks.size() == 9 && v.all_hold(), "n = " + std::to_string(n));
    }
  });

  all &= run(5, "witnesses for a,b <= 30, prime cap 1e5, re-validated", [](Check& c) {
    for (std::uint64_t a = 1; a <= 30; ++a) {
      for (std::uint64_t b = 1; b <= 30; ++b) {
        const auto w = conj2_witness(a, b, 100'000);
        c.expect(revalidate(w), "revalidation " + str(a, b));
        // Independent of the library: p | 3n - 1 to a higher power than
        // it divides the binomial, by the carry count.
        const std::uint64_t mod = 3 * w.n - 1;
        c.expect(oracle::is_prime(w.p) && mod % w.p == 0 &&
                     carries((a + b) * w.n, a * w.n, w.p) <
                         static_cast<std::int64_t>(oracle::vp(mod, w.p)),
                 "oracle " + str(a, b));
      }
    }
  });

  all &= run(6, "prime window 530 <= x <= 3761", [](Check& c) {
    const auto r = lemma_p2_verify(530, 3761);
    c.expect(r.failures.empty(), std::to_string(r.failures.size()) + " failures");
    c.expect(r.entries.size() == 3761 - 530 + 1, "entry count");
    for (const auto& e : r.entries) {
      const std::uint64_t p = e.witness_prime.value_or(0);
      c.expect(oracle::is_prime(p) && p % 3 == 2 && e.x < p && 19 * p < 20 * e.x,
               "x = " + std::to_string(e.x));
    }
  });

  all &= run(7, "q-side theorems", [&base](Check& c) {
    Limits wide = base;
    wide.degree = 400'000;
    for (std::uint64_t n = 1; n <= 4; ++n) {
      const auto v = verify_thm4(n, true, wide);
      for (std::size_t i = 0; i < 6; ++i) {
        c.expect(v[i].polynomial && v[i].nonneg == std::optional<bool>(true),
                 to_string(v[i].family) + " n = " + std::to_string(n));
      }
      c.expect(v[6].polynomial, "30n_5n n = " + std::to_string(n));
    }
    for (std::uint64_t n = 1; n <= 40; ++n) {
      for (std::uint64_t k = 0; k <= n; ++k) {
        const auto v = verify_thm_kn(n, k);
        c.expect(v.polynomial && v.nonneg == std::optional<bool>(true), "gcd_kn" + str(n, k));
      }
    }
    for (std::uint64_t a = 1; a <= 60; ++a) {
      for (std::uint64_t b = 1; b <= 60; ++b) {
        const auto v = lemma_andrews_check(a, b);
        c.expect(v.polynomial && v.nonneg == std::optional<bool>(true), "andrews" + str(a, b));
      }
    }
    for (std::uint64_t a = 1; a <= 8; ++a) {
      for (std::uint64_t b = 1; b <= 8; ++b) {
        for (std::uint64_t n = 1; n <= 8; ++n) {
          const auto v = verify_thm_anbn(a, b, n);
          c.expect(v.polynomial && v.nonneg == std::optional<bool>(true), "anbn" + str(a, b, n));
        }
      }
    }
  });

  all &= run(8, "coefficient pattern at n = 1, 2", [](Check& c) {
    for (std::uint64_t n : {1, 2}) {
      const auto r = conj_330n88n_check(n);
      const std::uint64_t deg = 125 * n * n - 25 * n + 4;
      const std::vector<std::pair<std::uint64_t, Int>> want{{1, -1}, {deg - 1, -1}};
      c.expect(r.degree == deg && r.negative_positions == want && r.pattern_holds,
               "n = " + std::to_string(n));
    }
    // n = 1 once more from plain long division.
    oracle::Poly q;
    c.expect(oracle::quotient_seq({1, 1}, {9, 14}, 30, 5, q), "oracle division");
    std::vector<std::size_t> neg;
    for (std::size_t i = 0; i < q.size(); ++i) {
      if (q[i] < 0) neg.push_back(i);
    }
    c.expect(q.size() == 105 && neg == std::vector<std::size_t>{1, 103}, "oracle pattern");
  });

  all &= run(9, "oracle equivalence", [&base](Check& c) {
    // Lucas against Pascal's triangle mod p.
    for (std::uint64_t p : {2, 3, 5, 7, 11, 13}) {
      std::vector<std::uint32_t> row{1};
      for (std::uint64_t m = 0; m <= 2000; ++m) {
        for (std::uint64_t k = 0; k <= m; ++k) {
          if (lucas_binom_mod_p(Natural(m), Natural(k), Natural(p), base) != row[k]) {
            c.expect(false, "lucas " + str(m, k, p));
          }
        }
        std::vector<std::uint32_t> next(m + 2, 1);
        for (std::uint64_t k = 1; k <= m; ++k) next[k] = (row[k - 1] + row[k]) % p;
        row = std::move(next);
      }
    }
    // Valuations against the exact binomial and against carry counts.
    const auto primes = oracle::primes_up_to(500);
    for (std::uint64_t m = 1; m <= 500; ++m) {
      for (std::uint64_t k = 0; k <= m; ++k) {
        const mpz_class exact = oracle::binom(m, k);
        for (std::uint64_t p : primes) {
          if (p > m) break;
          const auto v = binom_valuation(Natural(m), Natural(k), Natural(p), base);
          const auto want = static_cast<std::int64_t>(oracle::vp(exact, p));
          if (v.valuation != want || v.carry_count != carries(m, k, p)) {
            c.expect(false, "valuation " + str(m, k, p));
          }
        }
      }
    }
    // Cyclotomic expansion against q-Pascal.
    for (std::uint64_t m = 0; m <= 30; ++m) {
      const auto row = qpascal_row(m);
      for (std::uint64_t k = 0; k <= m; ++k) {
        c.expect(plain(expand(qbinom_factorization(m, k), base)) == row[k], "qbinom" + str(m, k));
      }
    }
    // Exponent-vector polynomiality against long division.
    std::mt19937 rng(2024);
    for (int trial = 0; trial < 3000; ++trial) {
      const std::uint64_t bm = 1 + rng() % 24;
      const std::uint64_t bk = rng() % (bm + 1);
      std::vector<std::uint64_t> ups;
      std::vector<std::uint64_t> downs;
      for (std::size_t i = 0, count = 1 + rng() % 3; i < count; ++i) {
        ups.push_back(1 + rng() % 16);
        downs.push_back(1 + rng() % 30);
      }
      const QuotientExpr e(ups, downs, bm, bk);
      oracle::Poly q;
      const bool divides = oracle::quotient(ups, downs, bm, bk, q);
      const auto f = expr_factorization(e);
      c.expect(is_polynomial(f) == divides, "division trial " + std::to_string(trial));
      if (divides) c.expect(plain(expand(f, base)) == q, "quotient trial " + std::to_string(trial));
    }
  });

  all &= run(10, "identities and q = 1 specialization", [&base](Check& c) {
    for (std::uint64_t a = 1; a <= 20; ++a) {
      for (std::uint64_t b = 1; b <= 20; ++b) {
        for (std::uint64_t n = 1; n <= 20; ++n) {
          if (a * n < 2) continue;  // the identity needs an >= 2
          c.expect(verify_decomposition(a, b, n), "decomposition" + str(a, b, n));
        }
      }
    }
    Limits wide = base;
    wide.degree = 400'000;
    for (std::uint64_t n = 1; n <= 2; ++n) {
      for (auto fam : {QFamily::f12n_3n, QFamily::f12n_4n, QFamily::f60n_6n, QFamily::f120n_40n,
                       QFamily::f120n_45n, QFamily::f330n_88n, QFamily::f30n_5n}) {
        q_one(c, family_expr(fam, n), to_string(fam) + " n = " + std::to_string(n), wide);
      }
    }
    for (std::uint64_t n = 1; n <= 20; ++n) {
      for (std::uint64_t k = 0; k <= n; ++k) {
        q_one(c, family_expr(QFamily::gcd_kn, n, k), "gcd_kn" + str(n, k), base);
      }
    }
    for (std::uint64_t a = 1; a <= 20; ++a) {
      for (std::uint64_t b = 1; b <= 20; ++b) {
        q_one(c, family_expr(QFamily::andrews, 0, 0, a, b), "andrews" + str(a, b), base);
      }
    }
    for (std::uint64_t a = 1; a <= 6; ++a) {
      for (std::uint64_t b = 1; b <= 6; ++b) {
        for (std::uint64_t n = 1; n <= 6; ++n) {
          const auto e = family_expr(QFamily::anbn, n, 0, a, b);
          q_one(c, e, "anbn" + str(a, b, n), base);
          // Against the integer statement directly.
          const std::uint64_t g = std::gcd(a * n, b * n + 1);
          const mpz_class num = oracle::binom((a + b) * n, a * n) * g;
          c.expect(num % (b * n + 1) == 0 &&
                       expand(expr_factorization(e), base).eval_at_one() == num / (b * n + 1),
                   "anbn integer" + str(a, b, n));
          if ((b * n + 1) % a == 0) {
            const mpz_class c_num = oracle::binom((a + b) * n, a * n) * a;
            c.expect(c_abn_poly(a, b, n, base).eval_at_one() == c_num / (b * n + 1),
                     "c_abn" + str(a, b, n));
          }
        }
      }
    }
    for (std::uint64_t n = 1; n <= 20; ++n) {
      for (std::uint64_t k = 1; k <= n; ++k) {
        const mpz_class num = oracle::binom(2 * n, n - k) * k;
        c.expect(num % n == 0 && b_nk_poly(n, k, base).eval_at_one() == num / n, "b_nk" + str(n, k));
      }
    }
  });

  std::printf("%s\n", all ? "ALL CRITERIA PASS" : "SOME CRITERIA FAIL");
  return all ? 0 : 1;
}
