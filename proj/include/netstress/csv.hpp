#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace netstress {

// RFC 4180 record reader. Quoted fields may contain commas, quotes ("")
// and newlines; records are terminated by LF or CRLF.
class CsvReader {
public:
    explicit CsvReader(std::istream& in) : in_(in) {}

    // Reads the next record into `fields`. Returns false at end of input.
    bool next(std::vector<std::string>& fields);

    // 1-based line number where the last record started.
    std::size_t record_line() const { return record_line_; }

private:
    std::istream& in_;
    std::size_t line_ = 1;
    std::size_t record_line_ = 1;
};

std::string csv_escape(std::string_view field);
void write_csv_row(std::ostream& out, std::span<const std::string> fields);

// Shortest-round-trip decimal formatting; parse is exact for such output.
std::string format_double(double value);
double parse_double(std::string_view text, const char* what);
std::int64_t parse_int(std::string_view text, const char* what);

} // namespace netstress
