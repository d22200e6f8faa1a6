#pragma once

// Subcommands behind the divcert tool. Each returns a report plus an exit
// code; argument parsing and printing live in the tool itself.
//
// Exit codes: 0 success, 1 a verified statement failed, 2 inconclusive or
// search exhausted, 3 partial because a budget was hit, 64 usage error
// (raised as DomainError and mapped by the caller).

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "divcert/cli/report.hpp"
#include "divcert/limits.hpp"

namespace divcert::cli {

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int failed = 1;
inline constexpr int inconclusive = 2;
inline constexpr int partial = 3;
inline constexpr int usage = 64;
}  // namespace exit_code

std::string engine_version();

struct RunOptions {
  Limits limits = default_limits();
  std::optional<std::string> checkpoint;
  std::size_t chunk = 64;
};

struct CommandResult {
  RunReport report;
  int exit_code = exit_code::ok;
  std::vector<std::string> warnings;
};

struct FabArgs {
  // A single pair, or else the grid [a_min, a_max] x [b_min, b_max].
  std::optional<std::uint64_t> a;
  std::optional<std::uint64_t> b;
  std::uint64_t a_min = 1;
  std::uint64_t a_max = 0;
  std::uint64_t b_min = 1;
  std::uint64_t b_max = 0;
  std::uint64_t n_cap = 10'000'000;
  std::optional<std::string> cache;
};

CommandResult cmd_fab(const FabArgs& args, const RunOptions& opts);

// Unset ranges take the per-theorem defaults.
struct VerifyArgs {
  std::string id;  // thm0 thm3 thm4 thm_kn andrews anbn decomposition
  std::optional<std::uint64_t> a_max;
  std::optional<std::uint64_t> b_max;
  std::optional<std::uint64_t> n_min;
  std::optional<std::uint64_t> n_max;
  bool expand = false;
};

CommandResult cmd_verify(const VerifyArgs& args, const RunOptions& opts);

struct ConjArgs {
  std::string id;  // conj2witness oddp oddp2 c330n88n
  std::uint64_t a_max = 30;
  std::uint64_t b_max = 30;
  std::uint64_t p_cap = 100'000;
  std::uint64_t p = 3;
  std::uint64_t m = 1;
  std::optional<std::uint64_t> n;
  std::uint64_t n_max = 50;
};

CommandResult cmd_conj(const ConjArgs& args, const RunOptions& opts);

CommandResult cmd_primes(std::uint64_t x_lo, std::uint64_t x_hi, const RunOptions& opts);

// The Gaussian polynomial [m, k]_q, or its cyclotomic exponent vector.
CommandResult cmd_qbinom(std::uint64_t m, std::uint64_t k, bool exponents,
                         const RunOptions& opts);

CommandResult cmd_theta(std::uint64_t x, const RunOptions& opts);

}  // namespace divcert::cli
