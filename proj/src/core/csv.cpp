#include "lpflow/core/csv.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace lpflow {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

CsvTable::CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

void CsvTable::comment(const std::string& line) { comments_.push_back(line); }

void CsvTable::add_row(std::vector<CsvCell> row) {
    if (row.size() != header_.size()) throw std::invalid_argument("CSV row width does not match header");
    rows_.push_back(std::move(row));
}

void CsvTable::write(std::ostream& out) const {
    for (const auto& c : comments_) out << "# " << c << "\r\n";
    for (std::size_t i = 0; i < header_.size(); ++i) out << (i ? "," : "") << csv_escape(header_[i]);
    out << "\r\n";
    for (const auto& row : rows_) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out << ',';
            std::visit(
                [&](const auto& v) {
                    using T = std::decay_t<decltype(v)>;
                    if constexpr (std::is_same_v<T, std::string>) out << csv_escape(v);
                    else if constexpr (std::is_same_v<T, double>) out << format_double(v);
                    else out << v;
                },
                row[i]);
        }
        out << "\r\n";
    }
}

std::string CsvTable::str() const {
    std::ostringstream os;
    write(os);
    return os.str();
}

void CsvTable::save(const std::string& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    write(out);
}

namespace {

std::vector<std::vector<std::string>> split_records(const std::string& text) {
    std::vector<std::vector<std::string>> records;
    std::vector<std::string> rec;
    std::string cell;
    bool quoted = false, at_line_start = true, comment = false;
    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        if (at_line_start && c == '#') comment = true;
        at_line_start = false;
        if (comment) {
            if (c == '\n') {
                comment = false;
                at_line_start = true;
            }
            continue;
        }
        if (quoted) {
            if (c == '"') {
                if (i + 1 < text.size() && text[i + 1] == '"') {
                    cell += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                cell += c;
            }
            continue;
        }
        if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            rec.push_back(std::move(cell));
            cell.clear();
        } else if (c == '\r') {
        } else if (c == '\n') {
            rec.push_back(std::move(cell));
            cell.clear();
            records.push_back(std::move(rec));
            rec.clear();
            at_line_start = true;
        } else {
            cell += c;
        }
    }
    if (!cell.empty() || !rec.empty()) {
        rec.push_back(std::move(cell));
        records.push_back(std::move(rec));
    }
    return records;
}

}  // namespace

ParsedCsv parse_csv(const std::string& text) {
    auto records = split_records(text);
    ParsedCsv out;
    if (records.empty()) return out;
    out.header = std::move(records.front());
    out.rows.assign(std::make_move_iterator(records.begin() + 1), std::make_move_iterator(records.end()));
    return out;
}

std::vector<double> ParsedCsv::column(const std::string& name) const {
    for (std::size_t c = 0; c < header.size(); ++c) {
        if (header[c] != name) continue;
        std::vector<double> v;
        for (const auto& r : rows) v.push_back(std::stod(r.at(c)));
        return v;
    }
    throw std::out_of_range("no CSV column named " + name);
}

}  // namespace lpflow
