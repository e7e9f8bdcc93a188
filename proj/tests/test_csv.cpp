#include <doctest.h>

#include <random>
#include <sstream>

#include "patecon/csv.hpp"
#include "patecon/errors.hpp"

using namespace patecon;

TEST_CASE("csv parses plain rows") {
  auto rows = csv::parse("a,b,c\n1,2,3\n");
  REQUIRE(rows.size() == 2);
  CHECK(rows[0] == csv::Row{"a", "b", "c"});
  CHECK(rows[1] == csv::Row{"1", "2", "3"});
}

TEST_CASE("csv handles rfc4180 quoting") {
  auto rows = csv::parse("\"a,b\",\"say \"\"hi\"\"\",\"two\nlines\"\n");
  REQUIRE(rows.size() == 1);
  CHECK(rows[0][0] == "a,b");
  CHECK(rows[0][1] == "say \"hi\"");
  CHECK(rows[0][2] == "two\nlines");
}

TEST_CASE("csv final row without newline is kept") {
  auto rows = csv::parse("x,y");
  REQUIRE(rows.size() == 1);
  CHECK(rows[0] == csv::Row{"x", "y"});
}

TEST_CASE("csv empty fields survive") {
  auto rows = csv::parse("a,,c\n,,\n");
  REQUIRE(rows.size() == 2);
  CHECK(rows[0][1] == "");
  CHECK(rows[1] == csv::Row{"", "", ""});
}

TEST_CASE("csv rejects mid-field quote and unterminated quote") {
  CHECK_THROWS_AS(csv::parse("ab\"cd\n"), Error);
  CHECK_THROWS_AS(csv::parse("\"abc\n"), Error);
}

TEST_CASE("csv write/parse round-trip on random content") {
  std::mt19937 rng(42);
  const std::string alphabet = "ab,\"\n x;";
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<csv::Row> rows;
    std::uniform_int_distribution<int> nrows(1, 5), ncols(1, 4), len(0, 8),
        pick(0, static_cast<int>(alphabet.size()) - 1);
    int cols = ncols(rng);
    int total_rows = nrows(rng);
    for (int r = 0; r < total_rows; ++r) {
      csv::Row row;
      for (int c = 0; c < cols; ++c) {
        std::string field;
        for (int i = len(rng); i > 0; --i) field.push_back(alphabet[pick(rng)]);
        row.push_back(field);
      }
      rows.push_back(row);
    }
    // a trailing all-empty single-field row is indistinguishable from no row
    bool all_empty = true;
    for (const auto& f : rows.back()) all_empty &= f.empty();
    if (all_empty) rows.back()[0] = "x";

    std::ostringstream out;
    for (const auto& row : rows) csv::write_row(out, row);
    auto parsed = csv::parse(out.str());
    REQUIRE(parsed.size() == rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) CHECK(parsed[i] == rows[i]);
  }
}
