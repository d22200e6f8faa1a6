#include "divcert/cli/fab_cache.hpp"

#include <fstream>
#include <sstream>

#include "divcert/cli/checkpoint.hpp"
#include "divcert/errors.hpp"

namespace divcert::cli {

namespace {

bool settled(const json& r) {
  const auto v = r.value("verdict", "");
  return v == "found" || v == "proven_zero";
}

}  // namespace

FabCache::FabCache(std::string path, std::string engine_version) : path_(std::move(path)) {
  header_ = json{{"type", "fab_cache"}, {"engine_version", engine_version}}.dump();

  std::ifstream in(path_, std::ios::binary);
  std::string text;
  if (in) {
    std::stringstream buf;
    buf << in.rdbuf();
    text = buf.str();
  }
  if (text.empty()) {
    atomic_write(path_, header_ + '\n');
    return;
  }

  std::istringstream lines(text);
  std::string line;
  std::getline(lines, line);
  const json stored = json::parse(line, nullptr, false);
  if (stored.is_discarded() || !stored.is_object() || stored.value("type", "") != "fab_cache") {
    throw DomainError("cache " + path_ + " has no valid header");
  }
  if (stored.value("engine_version", "") != engine_version) {
    throw DomainError("cache " + path_ + " was written by engine version " +
                      stored.value("engine_version", "") + ", this is " + engine_version);
  }
  std::size_t lineno = 1;
  while (std::getline(lines, line)) {
    ++lineno;
    const bool terminated = !lines.eof();
    json record = json::parse(line, nullptr, false);
    if (!terminated || record.is_discarded() || !record.is_object() || !record.contains("a") ||
        !record.contains("b") || !settled(record)) {
      warnings_.push_back("dropping corrupt line " + std::to_string(lineno) + " and after in " +
                          path_);
      rewrite_on_store_ = true;
      break;
    }
    // json::operator= takes its argument by value and the right side is
    // evaluated first, so the key has to be read before the move.
    const std::pair key{record.at("a").get<std::uint64_t>(), record.at("b").get<std::uint64_t>()};
    entries_[key] = std::move(record);
  }
  // Appending after a torn line would glue the new record onto it.
  if (rewrite_on_store_) compact();
}

std::optional<json> FabCache::lookup(std::uint64_t a, std::uint64_t b,
                                     std::uint64_t n_cap) const {
  const auto it = entries_.find({a, b});
  if (it == entries_.end()) return std::nullopt;
  const json& r = it->second;
  if (r.at("verdict") == "found" && r.at("n").get<std::uint64_t>() > n_cap) return std::nullopt;
  return r;
}

void FabCache::store(const json& record) {
  if (!settled(record)) return;
  entries_[{record.at("a").get<std::uint64_t>(), record.at("b").get<std::uint64_t>()}] = record;
  std::ofstream out(path_, std::ios::binary | std::ios::app);
  if (!out) throw ResourceError("cannot append to " + path_);
  out << record.dump() << '\n';
}

void FabCache::compact() {
  std::string text = header_ + '\n';
  for (const auto& [_, r] : entries_) {
    text += r.dump();
    text += '\n';
  }
  atomic_write(path_, text);
  rewrite_on_store_ = false;
}

}  // namespace divcert::cli
