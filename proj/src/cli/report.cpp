#include "divcert/cli/report.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace divcert::cli {

namespace {

json pairs_to_json(const std::vector<std::pair<std::uint64_t, Int>>& v) {
  json out = json::array();
  for (const auto& [pos, c] : v) out.push_back(json::array({pos, to_json(c)}));
  return out;
}

std::string cell(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

}  // namespace

std::string to_jsonl(const RunReport& report) {
  std::string out;
  for (const auto& r : report.records) {
    out += r.dump();
    out += '\n';
  }
  json summary = report.summary;
  summary["type"] = "summary";
  summary["command"] = report.command;
  summary["parameters"] = report.parameters;
  summary["engine_version"] = report.engine_version;
  summary["records"] = report.records.size();
  if (report.timing) summary["timing"] = *report.timing;
  out += summary.dump();
  out += '\n';
  return out;
}

std::string to_table(const RunReport& report) {
  std::vector<std::string> columns;
  std::set<std::string> seen;
  for (const auto& r : report.records) {
    for (const auto& [key, _] : r.items()) {
      if (seen.insert(key).second) columns.push_back(key);
    }
  }
  std::vector<std::vector<std::string>> rows;
  rows.push_back(columns);
  for (const auto& r : report.records) {
    std::vector<std::string> row;
    for (const auto& c : columns) row.push_back(r.contains(c) ? cell(r.at(c)) : "");
    rows.push_back(std::move(row));
  }
  std::vector<std::size_t> width(columns.size(), 0);
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) width[i] = std::max(width[i], row[i].size());
  }

  std::ostringstream os;
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      os << row[i];
      if (i + 1 < row.size()) os << std::string(width[i] - row[i].size() + 2, ' ');
    }
    os << '\n';
  }
  os << "# " << report.command;
  for (const auto& [k, v] : report.parameters) os << ' ' << k << '=' << v;
  os << "  records=" << report.records.size();
  for (const auto& [k, v] : report.summary.items()) os << "  " << k << '=' << cell(v);
  if (report.timing) os << "  timing=" << *report.timing;
  os << "  version=" << report.engine_version << '\n';
  return os.str();
}

json to_json(const Natural& n) {
  if (n >= 0 && n.fits_ulong_p()) return static_cast<std::uint64_t>(n.get_ui());
  if (n < 0 && n.fits_slong_p()) return static_cast<std::int64_t>(n.get_si());
  return n.get_str();
}

json to_json(const ValuationCertificate& c) {
  return {{"p", to_json(c.p)},
          {"m", to_json(c.m)},
          {"k", to_json(c.k)},
          {"valuation", c.valuation},
          {"carries", c.carry_count}};
}

json to_json(const DivisibilityVerdict& v) {
  json certs = json::array();
  for (std::size_t i = 0; i < v.certificates.size(); ++i) {
    json c = to_json(v.certificates[i]);
    c["required"] = v.required[i];
    certs.push_back(std::move(c));
  }
  return {{"divides", v.divides}, {"certificates", std::move(certs)}};
}

json to_json(const TheoremBound& b) {
  return {{"p", to_json(b.p)}, {"s", to_json(b.s)}, {"phi", to_json(b.phi)},
          {"bound", to_json(b.bound)}};
}

json to_json(const FabResult& r) {
  json j = {{"a", r.a}, {"b", r.b}, {"verdict", to_string(r.verdict)}, {"n", r.n}};
  j["bound"] = r.bound ? to_json(*r.bound) : json(nullptr);
  if (r.certificate) j["certificate"] = to_json(*r.certificate);
  return j;
}

json to_json(const Thm3Verdict& v) {
  json checks = json::array();
  for (const auto& c : v.checks) {
    checks.push_back({{"label", c.label},
                      {"m", c.m},
                      {"k", c.k},
                      {"modulus", to_json(c.modulus)},
                      {"holds", c.holds}});
  }
  return {{"n", v.n}, {"all_hold", v.all_hold()}, {"checks", std::move(checks)}};
}

json to_json(const QFamilyVerdict& v) {
  json j = {{"family", to_string(v.family)},
            {"polynomial", v.polynomial},
            {"degree", v.degree},
            {"meets_claim", v.meets_claim()}};
  j["nonneg"] = v.nonneg ? json(*v.nonneg) : json(nullptr);
  if (!v.negative_positions.empty()) j["negatives"] = pairs_to_json(v.negative_positions);
  switch (v.family) {
    case QFamily::gcd_kn: j["n"] = v.n; j["k"] = v.k; break;
    case QFamily::andrews: j["a"] = v.a; j["b"] = v.b; break;
    case QFamily::anbn:
    case QFamily::c_abn: j["a"] = v.a; j["b"] = v.b; j["n"] = v.n; break;
    default: j["n"] = v.n; break;
  }
  return j;
}

json to_json(const Conj2Witness& w) {
  return {{"a", w.a}, {"b", w.b}, {"p", w.p}, {"n", w.n}, {"valuation", w.valuation}};
}

json to_json(const PrimeWindowEntry& e) {
  json j = {{"x", e.x}};
  j["witness_prime"] = e.witness_prime ? json(*e.witness_prime) : json(nullptr);
  return j;
}

json to_json(const ThetaValue& t) {
  json j = {{"x", t.x}, {"theta", t.decimal}};
  std::ostringstream lo;
  std::ostringstream hi;
  lo.precision(21);
  hi.precision(21);
  lo << t.lower;
  hi << t.upper;
  j["lower"] = lo.str();
  j["upper"] = hi.str();
  j["in_window"] = t.in_window ? json(*t.in_window) : json(nullptr);
  return j;
}

json to_json(const Conj330Report& r) {
  return {{"n", r.n},
          {"degree", r.degree},
          {"negatives", pairs_to_json(r.negative_positions)},
          {"pattern_holds", r.pattern_holds}};
}

json to_json(const IntPoly& p) {
  json coeffs = json::array();
  for (const auto& c : p.coeffs()) coeffs.push_back(to_json(c));
  return {{"degree", p.degree()}, {"coefficients", std::move(coeffs)}};
}

json to_json(const CycloFactorization& f) {
  json exps = json::array();
  for (const auto& [d, e] : f.exponents) exps.push_back(json::array({d, e}));
  return {{"sign", f.sign}, {"degree", f.degree()}, {"exponents", std::move(exps)}};
}

}  // namespace divcert::cli
