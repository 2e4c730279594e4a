#pragma once

#include <string>
#include <vector>

namespace mmtc::csv {

// Formats a double with 10 significant digits, locale-independent.
std::string format_double(double v);

// RFC-4180 cell quoting (only when the cell needs it); LF line endings.
std::string escape(const std::string& cell);

class Table {
 public:
  explicit Table(std::vector<std::string> header);

  void add_row(std::vector<std::string> cells);
  // Serializes header + rows with LF endings.
  std::string serialize() const;
  // Writes to path; throws IoError on failure.
  void write(const std::string& path) const;

  std::size_t rows() const { return rows_.size(); }

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

}  // namespace mmtc::csv
