#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

namespace covert {

/// Schema version written into every CSV footer. Bump when columns change.
inline constexpr int kCsvSchemaVersion = 1;

/// A comma-separated table with a header row and a `#`-prefixed
/// `key=value` metadata footer.
class CsvTable {
 public:
  CsvTable(std::string name, std::vector<std::string> columns);

  const std::string& name() const { return name_; }
  const std::vector<std::string>& columns() const { return columns_; }
  std::size_t rows() const { return rows_.size(); }

  /// Throws std::invalid_argument if the cell count differs from the header.
  void add_row(std::vector<std::string> cells);
  void add_meta(std::string key, std::string value);

  std::string render() const;
  void write(const std::filesystem::path& path) const;

 private:
  std::string name_;
  std::vector<std::string> columns_;
  std::vector<std::vector<std::string>> rows_;
  std::vector<std::pair<std::string, std::string>> meta_;
};

/// Shortest round-trip-safe rendering used for every numeric cell.
std::string fmt_num(double value);
std::string fmt_num(long long value);

}  // namespace covert
