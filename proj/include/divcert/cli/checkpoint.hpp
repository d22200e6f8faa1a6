#pragma once

// Resumable grid runs. A checkpoint file holds a header line (engine
// version, command fingerprint) and the records of every finished grid
// point in grid order; the record count is the cursor. The file is
// replaced atomically after each chunk.

#include <cstddef>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "divcert/cli/report.hpp"

namespace divcert::cli {

// FNV-1a over the command and its sorted parameters, as 16 hex digits.
std::string fingerprint(const std::string& command,
                        const std::map<std::string, std::string>& parameters);

// Write `contents` to `path` through a temporary file and rename.
void atomic_write(const std::string& path, const std::string& contents);

class Checkpoint {
 public:
  // Loads an existing file or starts an empty one. A file from another
  // engine version or another command is refused with DomainError. A
  // truncated last line is dropped and noted in warnings().
  Checkpoint(std::string path, std::string engine_version, std::string command,
             const std::map<std::string, std::string>& parameters);

  const std::vector<json>& records() const { return records_; }
  const std::vector<std::string>& warnings() const { return warnings_; }

  void append(const std::vector<json>& chunk);

 private:
  void save() const;

  std::string path_;
  std::string header_;
  std::vector<json> records_;
  std::vector<std::string> warnings_;
};

// Evaluates point(0), ..., point(count - 1) in chunks of `chunk` over
// `width` threads. Results are in index order. With a checkpoint, points
// already on file are skipped and each finished chunk is saved.
std::vector<json> run_grid(std::size_t count, const std::function<json(std::size_t)>& point,
                           unsigned width, Checkpoint* checkpoint = nullptr,
                           std::size_t chunk = 64);

}  // namespace divcert::cli
