#pragma once

#include <filesystem>
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace qkt::harness {

/// "%.12g" formatting used for every floating-point CSV cell.
std::string format_number(double value);

// Builds a CSV document in memory; rows are written by the single writer
// (OutputSet) once all sweep points are in.
class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header);

  void add_row(std::initializer_list<double> cells);
  /// Integer cells are printed without a decimal point.
  void add_row(std::initializer_list<long long> ints, std::initializer_list<double> cells);

  std::string str() const;
  std::size_t rows() const { return rows_; }

 private:
  std::string body_;
  std::size_t columns_;
  std::size_t rows_ = 0;
};

std::string sha256_hex(std::string_view bytes);
std::string sha256_file(const std::filesystem::path& path);

struct FileRecord {
  std::string name;
  std::string sha256;
  std::uintmax_t bytes;
};

// Writes data files into one output directory and finishes with manifest.json.
class OutputSet {
 public:
  explicit OutputSet(std::filesystem::path dir);

  void write(const std::string& name, const std::string& contents);
  void write(const std::string& name, const CsvTable& table) { write(name, table.str()); }

  const std::vector<FileRecord>& files() const { return files_; }
  const std::filesystem::path& dir() const { return dir_; }

  void write_manifest(const std::string& command, const nlohmann::json& config, const std::string& started_utc,
                      const nlohmann::json& extra = nlohmann::json::object());

 private:
  std::filesystem::path dir_;
  std::vector<FileRecord> files_;
};

std::string utc_timestamp();

struct VerifyReport {
  std::vector<std::string> ok;
  std::vector<std::string> problems;
  bool passed() const { return problems.empty(); }
};

/// Re-hashes every file listed in dir/manifest.json.
VerifyReport verify_manifest(const std::filesystem::path& dir);

inline constexpr const char* kVersion = "0.1.0";

}  // namespace qkt::harness
