#include "patecon/csv.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

#include "patecon/errors.hpp"

namespace patecon::csv {

std::vector<Row> parse(const std::string& text) {
  std::vector<Row> rows;
  Row row;
  std::string field;
  bool in_quotes = false;
  bool field_was_quoted = false;
  std::size_t i = 0;
  const std::size_t n = text.size();

  auto end_field = [&] {
    row.push_back(field);
    field.clear();
    field_was_quoted = false;
  };
  auto end_row = [&] {
    end_field();
    rows.push_back(std::move(row));
    row.clear();
  };

  while (i < n) {
    char c = text[i];
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < n && text[i + 1] == '"') {
          field.push_back('"');
          i += 2;
        } else {
          in_quotes = false;
          ++i;
        }
      } else {
        field.push_back(c);
        ++i;
      }
      continue;
    }
    switch (c) {
      case '"':
        if (!field.empty() || field_was_quoted) {
          raise(ErrorCode::MalformedRow,
                "csv: quote opened mid-field near offset " + std::to_string(i));
        }
        in_quotes = true;
        field_was_quoted = true;
        ++i;
        break;
      case ',':
        end_field();
        ++i;
        break;
      case '\r':
        if (i + 1 < n && text[i + 1] == '\n') ++i;
        [[fallthrough]];
      case '\n':
        end_row();
        ++i;
        break;
      default:
        field.push_back(c);
        ++i;
        break;
    }
  }
  if (in_quotes) {
    raise(ErrorCode::MalformedRow, "csv: unterminated quoted field");
  }
  if (!field.empty() || field_was_quoted || !row.empty()) {
    end_row();
  }
  return rows;
}

std::vector<Row> read_all(std::istream& in) {
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

std::string escape_field(const std::string& field) {
  bool needs_quotes = field.find_first_of(",\"\r\n") != std::string::npos;
  if (!needs_quotes) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += "\"\"";
    else out.push_back(c);
  }
  out += '"';
  return out;
}

void write_row(std::ostream& out, const Row& row) {
  for (std::size_t i = 0; i < row.size(); ++i) {
    if (i) out << ',';
    out << escape_field(row[i]);
  }
  out << '\n';
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

}  // namespace patecon::csv
