#pragma once

#include <cstddef>
#include <istream>
#include <string>
#include <vector>

namespace homnet::csv {

struct Row {
    std::size_t line = 0;  // 1-based line of the first physical line of the record
    std::vector<std::string> fields;
};

/// RFC-4180-ish reader: comma separated, double-quote escaping, LF or CRLF.
/// Returns one Row per record; an empty trailing line yields no record.
/// Throws Error(ParseError) on unterminated quotes or stray quote characters.
std::vector<Row> read(std::istream& in);
std::vector<Row> read_file(const std::string& path);

/// Quotes a field when it contains a comma, quote, or newline.
std::string escape(const std::string& field);

}  // namespace homnet::csv
