#pragma once

#include <concepts>
#include <stdexcept>
#include <string>

namespace divcert {

// Input outside an operation's precondition (k > m, p not prime, ...).
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A configured budget (sieve size, factoring ceiling, degree) was exceeded.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A search ran out of candidates before finding what it looked for.
class ExhaustedError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An internal cross-check failed. Never expected; always a bug or a
// counterexample worth reporting.
class InvariantError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

inline void check_invariant(bool ok, const std::string& what) {
  if (!ok) throw InvariantError(what);
}

// For hot paths: the message is only built on failure.
template <std::invocable Message>
void check_invariant(bool ok, Message&& what) {
  if (!ok) throw InvariantError(std::string(what()));
}

}  // namespace divcert
