#include "harness/output.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <openssl/evp.h>

#include "harness/config.hpp"

namespace qkt::harness {

namespace fs = std::filesystem;

std::string format_number(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", value == 0.0 ? 0.0 : value);  // no "-0"
  return buf;
}

CsvTable::CsvTable(std::vector<std::string> header) : columns_(header.size()) {
  for (std::size_t i = 0; i < header.size(); ++i) body_ += (i ? "," : "") + header[i];
  body_ += '\n';
}

void CsvTable::add_row(std::initializer_list<double> cells) { add_row({}, cells); }

void CsvTable::add_row(std::initializer_list<long long> ints, std::initializer_list<double> cells) {
  if (ints.size() + cells.size() != columns_) throw std::logic_error("CsvTable: wrong number of cells");
  bool first = true;
  for (long long v : ints) {
    body_ += (first ? "" : ",") + std::to_string(v);
    first = false;
  }
  for (double v : cells) {
    body_ += (first ? "" : ",") + format_number(v);
    first = false;
  }
  body_ += '\n';
  ++rows_;
}

std::string CsvTable::str() const { return body_; }

std::string sha256_hex(std::string_view bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("sha256 failed");
  }
  static constexpr char hex[] = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[digest[i] >> 4];
    out += hex[digest[i] & 0xF];
  }
  return out;
}

std::string sha256_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return sha256_hex(ss.str());
}

OutputSet::OutputSet(fs::path dir) : dir_(std::move(dir)) {
  std::error_code ec;
  fs::create_directories(dir_, ec);
  if (ec || !fs::is_directory(dir_)) throw ConfigError("cannot create output directory '" + dir_.string() + "'");
  const fs::path probe = dir_ / ".write_probe";
  {
    std::ofstream test(probe);
    if (!test) throw ConfigError("output directory '" + dir_.string() + "' is not writable");
  }
  fs::remove(probe, ec);
}

void OutputSet::write(const std::string& name, const std::string& contents) {
  const fs::path path = dir_ / name;
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << contents;
  out.close();
  if (!out) throw std::runtime_error("error while writing " + path.string());
  files_.push_back({name, sha256_hex(contents), contents.size()});
}

std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void OutputSet::write_manifest(const std::string& command, const nlohmann::json& config,
                               const std::string& started_utc, const nlohmann::json& extra) {
  nlohmann::json files = nlohmann::json::array();
  for (const auto& f : files_) files.push_back({{"name", f.name}, {"sha256", f.sha256}, {"bytes", f.bytes}});
  nlohmann::json manifest{
      {"tool", "qkt"},
      {"version", kVersion},
      {"command", command},
      {"config", config},
      {"started_utc", started_utc},
      {"finished_utc", utc_timestamp()},
      {"files", files},
  };
  if (!extra.empty()) manifest["diagnostics"] = extra;
  std::ofstream out(dir_ / "manifest.json", std::ios::trunc);
  out << manifest.dump(2) << '\n';
  if (!out) throw std::runtime_error("cannot write manifest.json");
}

VerifyReport verify_manifest(const fs::path& dir) {
  std::ifstream in(dir / "manifest.json");
  if (!in) throw ConfigError("no manifest.json in '" + dir.string() + "'");
  nlohmann::json manifest;
  try {
    in >> manifest;
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(std::string("manifest.json is not valid JSON: ") + e.what());
  }
  if (!manifest.contains("files") || !manifest["files"].is_array()) throw ConfigError("manifest.json has no file list");
  VerifyReport report;
  for (const auto& entry : manifest["files"]) {
    const std::string name = entry.value("name", "");
    const fs::path path = dir / name;
    if (name.empty() || !fs::exists(path)) {
      report.problems.push_back(name + ": missing");
      continue;
    }
    const std::string actual = sha256_file(path);
    if (actual != entry.value("sha256", "")) {
      report.problems.push_back(name + ": checksum mismatch");
    } else {
      report.ok.push_back(name);
    }
  }
  return report;
}

}  // namespace qkt::harness
