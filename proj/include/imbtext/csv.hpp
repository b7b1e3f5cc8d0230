#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace imbtext {

// Minimal RFC-4180 CSV support: quoted fields may contain commas, doubled
// quotes and embedded newlines. Reader accepts both \n and \r\n endings.
class CsvReader {
public:
    explicit CsvReader(std::istream& in) : in_(in) {}

    // Returns the next record, or nullopt at end of input.
    std::optional<std::vector<std::string>> next();

private:
    std::istream& in_;
};

std::string csv_escape(const std::string& field);
void write_csv_row(std::ostream& out, const std::vector<std::string>& fields);

} // namespace imbtext
