#pragma once

// Reference implementations used only by the tests. They share no code with
// the library: trial division on machine words, GMP's own binomial, schoolbook
// polynomial products and long division on plain coefficient vectors.

#include <gmpxx.h>

#include <cstdint>
#include <numeric>
#include <vector>

namespace oracle {

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

inline std::vector<std::uint64_t> primes_up_to(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t i = 2; i <= n; ++i) {
    if (is_prime(i)) out.push_back(i);
  }
  return out;
}

inline mpz_class binom(std::uint64_t m, std::uint64_t k) {
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), m, k);
  return r;
}

// Exponent of p in n by repeated division; n != 0.
inline std::uint64_t vp(mpz_class n, std::uint64_t p) {
  std::uint64_t e = 0;
  while (n % p == 0) {
    n /= p;
    ++e;
  }
  return e;
}

inline std::uint64_t totient(std::uint64_t n) {
  std::uint64_t c = 0;
  for (std::uint64_t k = 1; k <= n; ++k) c += std::gcd(k, n) == 1 ? 1 : 0;
  return c;
}

inline std::uint64_t order(std::uint64_t p, std::uint64_t m) {
  std::uint64_t x = p % m;
  for (std::uint64_t s = 1;; ++s) {
    if (x == 1 % m) return s;
    x = x * p % m;
  }
}

using Poly = std::vector<mpz_class>;

inline void trim(Poly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

inline Poly mul(const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  trim(r);
  return r;
}

// 1 - q^k
inline Poly one_minus(std::uint64_t k) {
  Poly p(k + 1, 0);
  p[0] = 1;
  p[k] -= 1;
  trim(p);
  return p;
}

// Long division by a divisor with leading coefficient +-1. Returns false if
// the remainder is non-zero.
inline bool divide(const Poly& num, const Poly& den, Poly& quot) {
  Poly r = num;
  trim(r);
  quot.clear();
  if (r.size() < den.size()) {
    if (!r.empty()) return false;
    return true;
  }
  quot.assign(r.size() - den.size() + 1, 0);
  const mpz_class lead = den.back();
  for (std::size_t i = r.size(); i-- >= den.size();) {
    const mpz_class c = r[i] * lead;  // lead is +-1, its own inverse
    const std::size_t shift = i - (den.size() - 1);
    quot[shift] = c;
    for (std::size_t j = 0; j < den.size(); ++j) r[shift + j] -= c * den[j];
    if (i == den.size() - 1) break;
  }
  trim(r);
  trim(quot);
  return r.empty();
}

// prod (1 - q^{m_i}) [M, K]_q / prod (1 - q^{n_j}) by plain products and
// long division; false when some division leaves a remainder.
inline bool quotient(const std::vector<std::uint64_t>& ups,
                     const std::vector<std::uint64_t>& downs, std::uint64_t m,
                     std::uint64_t k, Poly& out) {
  Poly num{1};
  Poly den{1};
  for (std::uint64_t i = 0; i < k; ++i) {
    num = mul(num, one_minus(m - i));
    den = mul(den, one_minus(i + 1));
  }
  for (auto u : ups) num = mul(num, one_minus(u));
  for (auto d : downs) den = mul(den, one_minus(d));
  return divide(num, den, out);
}

// p * (1 - q^k) in place.
inline void mul_one_minus(Poly& p, std::uint64_t k) {
  p.resize(p.size() + k, 0);
  for (std::size_t i = p.size(); i-- > k;) p[i] -= p[i - k];
  trim(p);
}

// p / (1 - q^k) by the recurrence c_i = p_i + c_{i-k}; false when it leaves
// a remainder.
inline bool div_one_minus(Poly& p, std::uint64_t k) {
  trim(p);
  if (p.empty()) return true;
  if (p.size() <= k) return false;
  Poly c(p.size() - k, 0);
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = p[i] + (i >= k ? c[i - k] : mpz_class(0));
  for (std::size_t i = c.size(); i < p.size(); ++i) {
    const mpz_class below = i >= k ? mpz_class(-c[i - k]) : mpz_class(0);
    if (p[i] != below) return false;
  }
  p = std::move(c);
  trim(p);
  return true;
}

// Same value as quotient(), one factor at a time. Dividing a product by a
// factor at a time is exact at every step iff the whole quotient is.
inline bool quotient_seq(const std::vector<std::uint64_t>& ups,
                         const std::vector<std::uint64_t>& downs, std::uint64_t m,
                         std::uint64_t k, Poly& out) {
  out = Poly{1};
  for (std::uint64_t i = 0; i < k; ++i) mul_one_minus(out, m - i);
  for (auto u : ups) mul_one_minus(out, u);
  for (std::uint64_t i = 0; i < k; ++i) {
    if (!div_one_minus(out, i + 1)) return false;
  }
  for (auto d : downs) {
    if (!div_one_minus(out, d)) return false;
  }
  return true;
}

}  // namespace oracle
