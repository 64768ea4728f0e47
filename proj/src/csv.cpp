#include "peb/csv.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>

namespace peb {

std::string format_number(double x)
{
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

std::string csv_field(const std::string& s)
{
    if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

CsvWriter::CsvWriter(std::ostream& os, const std::vector<std::string>& columns) : os_(os), ncol_(columns.size())
{
    for (std::size_t i = 0; i < columns.size(); ++i) os_ << (i ? "," : "") << csv_field(columns[i] + " [1]");
    os_ << '\n';
}

void CsvWriter::row(const std::vector<double>& values)
{
    if (values.size() != ncol_) throw std::invalid_argument("csv: row width does not match the header");
    for (std::size_t i = 0; i < values.size(); ++i) os_ << (i ? "," : "") << format_number(values[i]);
    os_ << '\n';
}

void CsvWriter::row(const std::vector<std::string>& cells)
{
    if (cells.size() != ncol_) throw std::invalid_argument("csv: row width does not match the header");
    for (std::size_t i = 0; i < cells.size(); ++i) os_ << (i ? "," : "") << csv_field(cells[i]);
    os_ << '\n';
}

}  // namespace peb
