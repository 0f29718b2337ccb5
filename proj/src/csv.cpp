#include "netstress/csv.hpp"

#include <charconv>
#include <istream>
#include <ostream>

#include "netstress/error.hpp"

namespace netstress {

bool CsvReader::next(std::vector<std::string>& fields) {
    fields.clear();
    int c = in_.get();
    while (c == '\n') { // skip blank lines between records
        ++line_;
        c = in_.get();
    }
    if (c == EOF) return false;
    record_line_ = line_;

    std::string field;
    bool in_quotes = false;
    bool quoted_field = false;
    for (;; c = in_.get()) {
        if (in_quotes) {
            if (c == EOF)
                throw ValidationError("line " + std::to_string(record_line_) +
                                      ": unterminated quoted field");
            if (c == '"') {
                int peek = in_.get();
                if (peek == '"') {
                    field.push_back('"');
                } else {
                    in_quotes = false;
                    if (peek == EOF) c = EOF;
                    else in_.unget();
                }
            } else {
                if (c == '\n') ++line_;
                field.push_back(char(c));
            }
            if (c == EOF) break;
            continue;
        }
        if (c == '"' && field.empty() && !quoted_field) {
            in_quotes = true;
            quoted_field = true;
        } else if (c == ',') {
            fields.push_back(std::move(field));
            field.clear();
            quoted_field = false;
        } else if (c == '\r') {
            // tolerate CRLF; lone CR inside unquoted fields is not expected
        } else if (c == '\n' || c == EOF) {
            ++line_;
            break;
        } else {
            field.push_back(char(c));
        }
    }
    fields.push_back(std::move(field));
    return true;
}

std::string csv_escape(std::string_view field) {
    bool needs_quotes = field.find_first_of(",\"\r\n") != std::string_view::npos;
    if (!needs_quotes) return std::string(field);
    std::string out;
    out.reserve(field.size() + 2);
    out.push_back('"');
    for (char c : field) {
        if (c == '"') out.push_back('"');
        out.push_back(c);
    }
    out.push_back('"');
    return out;
}

void write_csv_row(std::ostream& out, std::span<const std::string> fields) {
    // a record of one empty field must not serialize as a blank line
    if (fields.size() == 1 && fields[0].empty()) {
        out << "\"\"\n";
        return;
    }
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) out.put(',');
        out << csv_escape(fields[i]);
    }
    out.put('\n');
}

std::string format_double(double value) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, ptr);
}

double parse_double(std::string_view text, const char* what) {
    double value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size())
        throw ValidationError(std::string("invalid number for ") + what + ": '" +
                              std::string(text) + "'");
    return value;
}

std::int64_t parse_int(std::string_view text, const char* what) {
    std::int64_t value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size())
        throw ValidationError(std::string("invalid integer for ") + what + ": '" +
                              std::string(text) + "'");
    return value;
}

} // namespace netstress
