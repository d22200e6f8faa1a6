#pragma once

#include <cstdint>

namespace divcert {

// Resource budgets shared by all modules. The CLI fills these from flags
// and DIVCERT_* environment variables before any work starts; library
// callers may pass their own.
struct Limits {
  std::uint64_t factor_ceiling = 100'000'000;   // largest n accepted by factorize
  std::uint64_t binom_exact_max = 100'000;      // largest m for binom_exact
  std::uint64_t sieve_limit = 200'000'000;      // largest sieve bound
  std::uint64_t degree = 100'000;               // largest polynomial degree expanded
  unsigned parallelism = 1;                     // worker width for grid runs
};

// Process-wide defaults. Set once at startup, read-only afterwards.
const Limits& default_limits();
void set_default_limits(const Limits& limits);

// Defaults overridden by DIVCERT_PAR, DIVCERT_BUDGET_DEGREE and
// DIVCERT_BUDGET_PRIME when present.
Limits limits_from_env();

}  // namespace divcert
