#include "cli/csv.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "cli/config.hpp"

namespace vortexcaps::cli {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

CsvTable::CsvTable(std::vector<std::string> header)
    : header_(std::move(header)) {}

void CsvTable::add_meta(const std::string& key, const std::string& value) {
  meta_.emplace_back(key, value);
}

void CsvTable::add_row(std::vector<CsvCell> row) {
  rows_.push_back(std::move(row));
}

void CsvTable::write(std::ostream& out, const std::string& config_hash) const {
  out << "# config-hash: " << config_hash << '\n';
  for (const auto& [k, v] : meta_) out << "# " << k << ": " << v << '\n';
  for (std::size_t i = 0; i < header_.size(); ++i) {
    out << (i ? "," : "") << header_[i];
  }
  out << '\n';
  for (const auto& row : rows_) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out << ',';
      std::visit(
          [&out](const auto& cell) {
            using T = std::decay_t<decltype(cell)>;
            if constexpr (std::is_same_v<T, double>) {
              out << format_double(cell);
            } else {
              out << cell;
            }
          },
          row[i]);
    }
    out << '\n';
  }
}

void write_table(const CsvTable& table, const std::string& path,
                 const std::string& config_hash, std::ostream& fallback) {
  if (path.empty() || path == "-") {
    table.write(fallback, config_hash);
    return;
  }
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write output file " + path);
  table.write(out, config_hash);
}

int CsvDocument::column(const std::string& name) const {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) return static_cast<int>(i);
  }
  return -1;
}

std::string CsvDocument::meta_value(const std::string& key) const {
  for (const auto& [k, v] : meta) {
    if (k == key) return v;
  }
  return {};
}

namespace {

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  return out;
}

}  // namespace

CsvDocument read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open CSV " + path);
  CsvDocument doc;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line.rfind("# ", 0) == 0) {
      const auto colon = line.find(": ");
      if (colon != std::string::npos) {
        doc.meta.emplace_back(line.substr(2, colon - 2), line.substr(colon + 2));
      }
      continue;
    }
    if (doc.header.empty()) {
      doc.header = split(line);
    } else {
      doc.rows.push_back(split(line));
    }
  }
  if (doc.header.empty()) throw ConfigError("CSV without header: " + path);
  return doc;
}

}  // namespace vortexcaps::cli
