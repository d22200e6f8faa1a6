#pragma once

// Append-only log of settled f(a, b) results. The first line is a header
// with the engine version; each later line is one FabResult record. Later
// lines win over earlier ones for the same pair. Inconclusive results are
// never stored, because they depend on the scan cap.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "divcert/cli/report.hpp"

namespace divcert::cli {

class FabCache {
 public:
  // Loads the log at `path`, creating it if absent. A log from another
  // engine version is refused with DomainError; a corrupt tail is dropped
  // and noted in warnings().
  FabCache(std::string path, std::string engine_version);

  // The stored record if it is what a fresh scan capped at n_cap would give.
  std::optional<json> lookup(std::uint64_t a, std::uint64_t b, std::uint64_t n_cap) const;

  // Appends a found / proven_zero record; others are ignored.
  void store(const json& record);

  // Rewrites the log with one line per pair, in (a, b) order.
  void compact();

  std::size_t size() const { return entries_.size(); }
  const std::vector<std::string>& warnings() const { return warnings_; }

 private:
  std::string path_;
  std::string header_;
  std::map<std::pair<std::uint64_t, std::uint64_t>, json> entries_;
  std::vector<std::string> warnings_;
  bool rewrite_on_store_ = false;
};

}  // namespace divcert::cli
