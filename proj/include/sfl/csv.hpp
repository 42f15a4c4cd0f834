#pragma once

#include <string>
#include <vector>

namespace sfl {

// CSV emitter: header row, 17-significant-digit numbers, '\n' line ends.
// Byte-identical output for identical inputs.
class CsvWriter {
 public:
  explicit CsvWriter(std::vector<std::string> header);
  void add_row(const std::vector<double>& values);
  void add_row_mixed(const std::vector<std::string>& values);
  std::string str() const;
  void write_file(const std::string& path) const;

 private:
  std::vector<std::string> header_;
  std::vector<std::string> rows_;
};

// Run manifest: resolved config, tool version, subcommand, tolerances and
// wall-clock duration, as a plain text file next to each CSV.
class Manifest {
 public:
  Manifest(const std::string& subcommand, const std::string& resolved_config);
  void set(const std::string& key, const std::string& value);
  void set(const std::string& key, double value);
  void write_file(const std::string& path) const;

 private:
  std::string subcommand_;
  std::string config_;
  std::vector<std::pair<std::string, std::string>> entries_;
};

}  // namespace sfl
