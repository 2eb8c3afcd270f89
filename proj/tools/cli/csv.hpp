#pragma once

#include <ostream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace vortexcaps::cli {

using CsvCell = std::variant<double, long long, std::string>;

/// Formats doubles with 17 significant digits.
std::string format_double(double v);

/// CSV table written as: config-hash comment, further "# key: value"
/// comments, header row, data rows.
class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header);

  void add_meta(const std::string& key, const std::string& value);
  void add_row(std::vector<CsvCell> row);
  std::size_t rows() const { return rows_.size(); }

  void write(std::ostream& out, const std::string& config_hash) const;

 private:
  std::vector<std::string> header_;
  std::vector<std::pair<std::string, std::string>> meta_;
  std::vector<std::vector<CsvCell>> rows_;
};

/// Writes to `path`, or to `fallback` when path is empty or "-".
void write_table(const CsvTable& table, const std::string& path,
                 const std::string& config_hash, std::ostream& fallback);

struct CsvDocument {
  std::vector<std::pair<std::string, std::string>> meta;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  /// Index of a header column or -1.
  int column(const std::string& name) const;
  std::string meta_value(const std::string& key) const;
};

CsvDocument read_csv(const std::string& path);

}  // namespace vortexcaps::cli
