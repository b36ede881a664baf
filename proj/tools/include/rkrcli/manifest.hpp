#pragma once

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

// vendored single-header nlohmann/json
#include "json.hpp"

namespace rkrcli {

/// Fixed-format float for CSV cells: 12 significant digits, '.' decimal.
std::string fmt(double x);

/// FNV-1a 64-bit checksum of a file's bytes, as a hex string.
std::string checksum_file(const std::filesystem::path& path);

/// Append-only CSV writer: mandatory header, '\n' line ends.
class CsvWriter {
 public:
  CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& header);
  void row(const std::vector<std::string>& cells);
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
  std::ofstream out_;
  std::size_t columns_;
};

/// Everything needed to reproduce a run: the full resolved configuration,
/// plus checksums of what it produced.
struct RunManifest {
  std::string command;
  nlohmann::json config;
  std::vector<std::filesystem::path> outputs;
  double duration_seconds = 0.0;

  /// Writes <dir>/manifest.json with per-output checksums.
  std::filesystem::path write(const std::filesystem::path& dir) const;
};

}  // namespace rkrcli
