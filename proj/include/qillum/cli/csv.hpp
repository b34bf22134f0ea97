#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace qillum::cli {

/// Scientific notation with 17 significant digits; "nan", "inf", "-inf" for
/// non-finite values.
std::string format_real(double v);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  void add_row(std::vector<std::string> row);
  void add_numeric_row(const std::vector<double>& values);
  std::string render() const;
};

/// Writes `table` to dir/name, creating dir if needed. Throws IoError.
std::filesystem::path write_csv(const std::filesystem::path& dir, const std::string& name, const CsvTable& table);

/// Parses a rendered table back (header + rows of strings).
CsvTable parse_csv(const std::string& text);

}  // namespace qillum::cli
