#include "sfl/csv.hpp"

#include <fstream>
#include <sstream>

#include "sfl/config.hpp"
#include "sfl/errors.hpp"

namespace sfl {

CsvWriter::CsvWriter(std::vector<std::string> header) : header_(std::move(header)) {}

void CsvWriter::add_row(const std::vector<double>& values) {
  std::string line;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) line += ',';
    line += format_double(values[i]);
  }
  rows_.push_back(std::move(line));
}

void CsvWriter::add_row_mixed(const std::vector<std::string>& values) {
  std::string line;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) line += ',';
    line += values[i];
  }
  rows_.push_back(std::move(line));
}

std::string CsvWriter::str() const {
  std::string out;
  for (std::size_t i = 0; i < header_.size(); ++i) {
    if (i) out += ',';
    out += header_[i];
  }
  out += '\n';
  for (const auto& r : rows_) {
    out += r;
    out += '\n';
  }
  return out;
}

void CsvWriter::write_file(const std::string& path) const {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error("cannot write " + path);
  f << str();
}

Manifest::Manifest(const std::string& subcommand, const std::string& resolved_config)
    : subcommand_(subcommand), config_(resolved_config) {}

void Manifest::set(const std::string& key, const std::string& value) {
  entries_.emplace_back(key, value);
}

void Manifest::set(const std::string& key, double value) {
  entries_.emplace_back(key, format_double(value));
}

void Manifest::write_file(const std::string& path) const {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error("cannot write " + path);
  f << "subcommand = " << subcommand_ << "\n";
  for (const auto& [k, v] : entries_) f << k << " = " << v << "\n";
  f << "--- resolved config ---\n" << config_;
}

}  // namespace sfl
