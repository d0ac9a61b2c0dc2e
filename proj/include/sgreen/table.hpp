#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace sgreen {

/// Numeric table with named columns and free-form metadata lines.
struct ResultTable {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  std::vector<std::string> metadata;  ///< written as "# ..." above the header

  /// Appends a row; throws ValidationError if its width does not match.
  void add_row(std::vector<double> row);
  std::size_t column(const std::string& name) const;

  bool operator==(const ResultTable&) const = default;
};

/// Shortest representation that parses back to the same double.
std::string format_double(double v);

/// CSV text: metadata comments, header, rows. Throws ValidationError on a
/// ragged row or a non-finite value.
std::string format_csv(const ResultTable& table);
ResultTable parse_csv(const std::string& text);

/// Throws IoError when the file cannot be written or read.
void write_csv(const ResultTable& table, const std::filesystem::path& path);
ResultTable read_csv(const std::filesystem::path& path);

}  // namespace sgreen
