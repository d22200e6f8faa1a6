#include "divcert/limits.hpp"

#include <charconv>
#include <cstdlib>
#include <cstring>
#include <string>

#include "divcert/errors.hpp"

namespace divcert {

namespace {

Limits& mutable_defaults() {
  static Limits limits;
  return limits;
}

void read_env(const char* name, std::uint64_t& out) {
  const char* value = std::getenv(name);
  if (value == nullptr || *value == '\0') return;
  std::uint64_t parsed = 0;
  const char* end = value + std::strlen(value);
  auto [ptr, ec] = std::from_chars(value, end, parsed);
  if (ec != std::errc() || ptr != end) {
    throw DomainError(std::string("invalid value for ") + name + ": " + value);
  }
  out = parsed;
}

}  // namespace

const Limits& default_limits() { return mutable_defaults(); }

void set_default_limits(const Limits& limits) { mutable_defaults() = limits; }

Limits limits_from_env() {
  Limits limits;
  std::uint64_t par = limits.parallelism;
  read_env("DIVCERT_PAR", par);
  limits.parallelism = par == 0 ? 1 : static_cast<unsigned>(par);
  read_env("DIVCERT_BUDGET_DEGREE", limits.degree);
  read_env("DIVCERT_BUDGET_PRIME", limits.sieve_limit);
  return limits;
}

}  // namespace divcert
