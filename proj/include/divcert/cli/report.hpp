#pragma once

// Run reports: one JSON record per grid point followed by a summary record.
// Keys serialize in sorted order, so equal inputs give equal bytes.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "divcert/arith.hpp"
#include "divcert/divisibility.hpp"
#include "divcert/qdivisibility.hpp"
#include "divcert/qpoly.hpp"

namespace divcert::cli {

using json = nlohmann::json;

struct RunReport {
  std::string command;
  std::map<std::string, std::string> parameters;
  std::vector<json> records;
  // Extra summary fields (counts, survivors, ...).
  json summary = json::object();
  // Wall-clock seconds; only present when asked for, since it breaks
  // byte-for-byte reproducibility.
  std::optional<double> timing;
  std::string engine_version;
};

// Line-delimited records, then the summary line.
std::string to_jsonl(const RunReport& report);

// The same records as an aligned text table.
std::string to_table(const RunReport& report);

// Numbers when they fit in 64 bits, decimal strings otherwise.
json to_json(const Natural& n);
json to_json(const ValuationCertificate& c);
json to_json(const DivisibilityVerdict& v);
json to_json(const TheoremBound& b);
json to_json(const FabResult& r);
json to_json(const Thm3Verdict& v);
json to_json(const QFamilyVerdict& v);
json to_json(const Conj2Witness& w);
json to_json(const PrimeWindowEntry& e);
json to_json(const ThetaValue& t);
json to_json(const Conj330Report& r);
json to_json(const IntPoly& p);
json to_json(const CycloFactorization& f);

}  // namespace divcert::cli
