#pragma once

#include <string>
#include <variant>
#include <vector>

namespace lde {

using CsvCell = std::variant<std::int64_t, double, std::string>;

// Locale-independent cell formatting; doubles carry 17 significant digits so
// values round-trip bit-exactly.
std::string format_cell(const CsvCell& cell);
std::string format_double(double value);

class CsvWriter {
  public:
    CsvWriter(std::vector<std::string> header) : header_(std::move(header)) {}

    void add_row(std::vector<CsvCell> row);
    // Rendered document: "# <version line>", header, then data rows.
    std::string render(const std::string& version_line) const;

    std::size_t row_count() const { return rows_.size(); }

  private:
    std::vector<std::string> header_;
    std::vector<std::vector<CsvCell>> rows_;
};

} // namespace lde
