#include "csv.hpp"

#include "mobnet/errors.hpp"

#include <charconv>
#include <cmath>
#include <istream>

namespace mobnet::csv {

std::vector<std::string> split_row(std::string_view line, std::size_t line_no)
{
    std::vector<std::string> fields;
    std::string field;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    field += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                field += c;
            }
        } else if (c == ',') {
            fields.push_back(std::move(field));
            field.clear();
        } else if (c == '"' && field.empty()) {
            quoted = true;
        } else {
            field += c;
        }
    }
    if (quoted) throw ParseError("unterminated quoted field", line_no, fields.size() + 1);
    fields.push_back(std::move(field));
    return fields;
}

bool read_line(std::istream& in, std::string& line)
{
    if (!std::getline(in, line)) return false;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return true;
}

void expect_header(std::istream& in, std::string_view expected)
{
    std::string line;
    if (!read_line(in, line)) throw ParseError("empty input, expected header '" + std::string(expected) + "'", 1);
    // Tolerate a UTF-8 byte order mark.
    if (line.starts_with("\xEF\xBB\xBF")) line.erase(0, 3);
    if (line != expected)
        throw ParseError("header '" + line + "' does not match '" + std::string(expected) + "'", 1);
}

std::string escape(std::string_view field)
{
    if (field.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(field);
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

double parse_double(std::string_view text, std::size_t line_no, std::size_t column)
{
    double value = 0.0;
    const char* first = text.data();
    const char* last = text.data() + text.size();
    if (first != last && *first == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last || text.empty() || !std::isfinite(value))
        throw ParseError("'" + std::string(text) + "' is not a finite decimal number", line_no, column);
    return value;
}

} // namespace mobnet::csv
