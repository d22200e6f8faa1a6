#include "divcert/cli/checkpoint.hpp"

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "divcert/errors.hpp"
#include "divcert/parallel.hpp"

namespace divcert::cli {

std::string fingerprint(const std::string& command,
                        const std::map<std::string, std::string>& parameters) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto mix = [&h](const std::string& s) {
    for (unsigned char c : s) {
      h ^= c;
      h *= 0x100000001b3ULL;
    }
    h ^= 0xff;  // field separator
    h *= 0x100000001b3ULL;
  };
  mix(command);
  for (const auto& [k, v] : parameters) {
    mix(k);
    mix(v);
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

void atomic_write(const std::string& path, const std::string& contents) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw ResourceError("cannot write " + tmp);
    out << contents;
    out.flush();
    if (!out) throw ResourceError("write failed: " + tmp);
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    throw ResourceError("cannot rename " + tmp + " to " + path);
  }
}

Checkpoint::Checkpoint(std::string path, std::string engine_version, std::string command,
                       const std::map<std::string, std::string>& parameters)
    : path_(std::move(path)) {
  const json header = {{"type", "checkpoint"},
                       {"engine_version", engine_version},
                       {"fingerprint", fingerprint(command, parameters)},
                       {"command", command}};
  header_ = header.dump();

  std::ifstream in(path_, std::ios::binary);
  if (!in) return;
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  if (text.empty()) return;

  std::vector<std::string> lines;
  std::size_t start = 0;
  while (start < text.size()) {
    const auto end = text.find('\n', start);
    if (end == std::string::npos) {
      // No newline: the last write never completed.
      warnings_.push_back("dropping unterminated last line of " + path_);
      break;
    }
    lines.push_back(text.substr(start, end - start));
    start = end + 1;
  }
  if (lines.empty()) return;

  const json stored = json::parse(lines[0], nullptr, false);
  if (stored.is_discarded() || !stored.is_object() || !stored.contains("engine_version")) {
    throw DomainError("checkpoint " + path_ + " has no valid header");
  }
  if (stored.value("engine_version", "") != engine_version) {
    throw DomainError("checkpoint " + path_ + " was written by engine version " +
                      stored.value("engine_version", "") + ", this is " + engine_version);
  }
  if (stored.value("fingerprint", "") != header.at("fingerprint").get<std::string>()) {
    throw DomainError("checkpoint " + path_ + " belongs to a different command or parameters");
  }
  for (std::size_t i = 1; i < lines.size(); ++i) {
    json record = json::parse(lines[i], nullptr, false);
    if (record.is_discarded()) {
      warnings_.push_back("dropping corrupt line " + std::to_string(i + 1) + " and after in " +
                          path_);
      break;
    }
    records_.push_back(std::move(record));
  }
}

void Checkpoint::append(const std::vector<json>& chunk) {
  records_.insert(records_.end(), chunk.begin(), chunk.end());
  save();
}

void Checkpoint::save() const {
  std::string text = header_ + '\n';
  for (const auto& r : records_) {
    text += r.dump();
    text += '\n';
  }
  atomic_write(path_, text);
}

std::vector<json> run_grid(std::size_t count, const std::function<json(std::size_t)>& point,
                           unsigned width, Checkpoint* checkpoint, std::size_t chunk) {
  std::vector<json> out;
  std::size_t next = 0;
  if (checkpoint != nullptr) {
    if (checkpoint->records().size() > count) {
      throw DomainError("checkpoint holds more records than the grid has points");
    }
    out = checkpoint->records();
    next = out.size();
  }
  if (chunk == 0) chunk = 1;
  while (next < count) {
    const std::size_t len = std::min(chunk, count - next);
    auto part = parallel_map(len, width, [&](std::size_t i) { return point(next + i); });
    if (checkpoint != nullptr) checkpoint->append(part);
    out.insert(out.end(), std::make_move_iterator(part.begin()),
               std::make_move_iterator(part.end()));
    next += len;
  }
  return out;
}

}  // namespace divcert::cli
