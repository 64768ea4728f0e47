#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace peb {

// Shortest round-trip decimal form.
std::string format_number(double x);
// RFC 4180 quoting when the field holds a comma, quote or line break.
std::string csv_field(const std::string& s);

// Header "name [1],..." (every quantity is dimensionless); rows end with '\n'.
class CsvWriter {
public:
    CsvWriter(std::ostream& os, const std::vector<std::string>& columns);

    void row(const std::vector<double>& values);
    void row(const std::vector<std::string>& cells);
    std::size_t columns() const { return ncol_; }

private:
    std::ostream& os_;
    std::size_t ncol_;
};

}  // namespace peb
