#pragma once

// Minimal RFC-4180 CSV reader/writer. Quoted fields may contain commas,
// doubled quotes, and embedded newlines.

#include <iosfwd>
#include <string>
#include <vector>

namespace patecon::csv {

using Row = std::vector<std::string>;

// Reads all rows from a stream. Throws Error{MalformedRow} on a quote that
// opens mid-field or an unterminated quoted field.
std::vector<Row> read_all(std::istream& in);

// Parses a single in-memory document.
std::vector<Row> parse(const std::string& text);

std::string escape_field(const std::string& field);
void write_row(std::ostream& out, const Row& row);

// Fixed "%.12g" rendering so emitted tables are byte-stable across runs.
std::string format_double(double v);

}  // namespace patecon::csv
