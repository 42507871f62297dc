#pragma once

// Internal CSV helpers shared by the readers and writers.

#include <cstddef>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace mobnet::csv {

/// Splits one RFC 4180 row. Throws ParseError (with `line_no`) on an
/// unterminated quote.
std::vector<std::string> split_row(std::string_view line, std::size_t line_no);

/// Reads a line, stripping a trailing CR. Returns false at EOF.
bool read_line(std::istream& in, std::string& line);

/// Reads the header and checks it matches `expected` exactly.
void expect_header(std::istream& in, std::string_view expected);

/// Quotes a field when it contains a comma, quote or newline.
std::string escape(std::string_view field);

double parse_double(std::string_view text, std::size_t line_no, std::size_t column);

} // namespace mobnet::csv
