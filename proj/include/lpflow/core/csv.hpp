#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

namespace lpflow {

using CsvCell = std::variant<std::string, double, std::int64_t>;

/// RFC-4180 table: CRLF line ends, quoted cells where needed, doubles with 17
/// significant digits so a round trip through text is exact. Lines starting
/// with '#' before the header carry metadata.
class CsvTable {
public:
    explicit CsvTable(std::vector<std::string> header);

    void comment(const std::string& line);
    void add_row(std::vector<CsvCell> row);

    const std::vector<std::string>& header() const { return header_; }
    const std::vector<std::vector<CsvCell>>& rows() const { return rows_; }

    void write(std::ostream& out) const;
    std::string str() const;
    void save(const std::string& path) const;

private:
    std::vector<std::string> comments_;
    std::vector<std::string> header_;
    std::vector<std::vector<CsvCell>> rows_;
};

std::string format_double(double v);
std::string csv_escape(const std::string& s);

/// Parses a table written by CsvTable (comments skipped, every cell as text).
struct ParsedCsv {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
    std::vector<double> column(const std::string& name) const;
};
ParsedCsv parse_csv(const std::string& text);

}  // namespace lpflow
