#include "rkrcli/manifest.hpp"

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "rkr/errors.hpp"

namespace rkrcli {

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

std::string checksum_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw rkr::IoError("checksum_file: cannot open " + path.string());
  std::uint64_t h = 0xcbf29ce484222325ULL;
  char c;
  while (in.get(c)) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

CsvWriter::CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& header)
    : path_(path), out_(path, std::ios::binary), columns_(header.size()) {
  if (!out_) throw rkr::IoError("CsvWriter: cannot write " + path_.string());
  row(header);
}

void CsvWriter::row(const std::vector<std::string>& cells) {
  if (cells.size() != columns_)
    throw std::invalid_argument("CsvWriter: wrong cell count for " + path_.string());
  std::string line;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) line.push_back(',');
    line += cells[i];
  }
  line.push_back('\n');
  out_ << line;
  out_.flush();
}

std::filesystem::path RunManifest::write(const std::filesystem::path& dir) const {
  nlohmann::json j;
  j["command"] = command;
  j["config"] = config;
  j["duration_seconds"] = duration_seconds;
  j["outputs"] = nlohmann::json::array();
  for (const auto& p : outputs) {
    j["outputs"].push_back({{"path", p.filename().string()}, {"fnv1a64", checksum_file(p)}});
  }
  const auto path = dir / "manifest.json";
  std::ofstream out(path, std::ios::binary);
  if (!out) throw rkr::IoError("RunManifest: cannot write " + path.string());
  out << j.dump(2) << '\n';
  return path;
}

}  // namespace rkrcli
