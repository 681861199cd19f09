#include "covert/csv.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace covert {

CsvTable::CsvTable(std::string name, std::vector<std::string> columns)
    : name_(std::move(name)), columns_(std::move(columns)) {}

void CsvTable::add_row(std::vector<std::string> cells) {
  if (cells.size() != columns_.size()) {
    throw std::invalid_argument("CsvTable '" + name_ + "': row has " + std::to_string(cells.size()) +
                                " cells, header has " + std::to_string(columns_.size()));
  }
  rows_.push_back(std::move(cells));
}

void CsvTable::add_meta(std::string key, std::string value) {
  meta_.emplace_back(std::move(key), std::move(value));
}

std::string CsvTable::render() const {
  std::ostringstream out;
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out << ',';
      out << cells[i];
    }
    out << '\n';
  };
  line(columns_);
  for (const auto& r : rows_) line(r);
  for (const auto& [k, v] : meta_) out << "# " << k << '=' << v << '\n';
  out << "# schema_version=" << kCsvSchemaVersion << '\n';
  return out.str();
}

void CsvTable::write(const std::filesystem::path& path) const {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write '" + path.string() + "'");
  f << render();
}

std::string fmt_num(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  return buf;
}

std::string fmt_num(long long value) { return std::to_string(value); }

}  // namespace covert
