#include <doctest.h>

#include <limits>
#include <sstream>

#include "citelens/csv.hpp"
#include "citelens/error.hpp"

using namespace citelens;

namespace {

std::vector<csv::Row> read_all(const std::string& text, const std::string& name = "input") {
  std::istringstream in(text);
  csv::Reader reader(in, name);
  std::vector<csv::Row> rows;
  while (auto row = reader.next()) rows.push_back(*row);
  return rows;
}

}  // namespace

TEST_CASE("plain rows, LF and CRLF") {
  auto rows = read_all("a,b,c\r\nd,e,f\n");
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].fields == std::vector<std::string>{"a", "b", "c"});
  CHECK(rows[1].fields == std::vector<std::string>{"d", "e", "f"});
  CHECK(rows[0].line == 1);
  CHECK(rows[1].line == 2);
}

TEST_CASE("last record without trailing newline") {
  auto rows = read_all("a,b\nc,d");
  REQUIRE(rows.size() == 2);
  CHECK(rows[1].fields == std::vector<std::string>{"c", "d"});
}

TEST_CASE("quoted fields: commas, escaped quotes, embedded newlines") {
  auto rows = read_all("\"a,b\",\"say \"\"hi\"\"\",\"line1\nline2\"\nnext,1,2\n");
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].fields == std::vector<std::string>{"a,b", "say \"hi\"", "line1\nline2"});
  // the embedded newline belongs to record 1; record 2 starts on physical line 3
  CHECK(rows[1].line == 3);
  CHECK(rows[1].fields == std::vector<std::string>{"next", "1", "2"});
}

TEST_CASE("empty fields and empty quoted fields") {
  auto rows = read_all(",x,\n\"\",\"\"\n");
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].fields == std::vector<std::string>{"", "x", ""});
  CHECK(rows[1].fields == std::vector<std::string>{"", ""});
}

TEST_CASE("unterminated quote names the file and record line") {
  CHECK_THROWS_WITH_AS(read_all("a,b\n\"open\n", "bad.csv"),
                       "bad.csv:2: unterminated quoted field", DataError);
}

TEST_CASE("stray quote inside unquoted field") {
  CHECK_THROWS_AS(read_all("ab\"c,d\n"), DataError);
}

TEST_CASE("write_row quotes only what needs quoting") {
  std::ostringstream out;
  csv::write_row(out, std::vector<std::string>{"plain", "a,b", "q\"q", "nl\nnl"});
  CHECK(out.str() == "plain,\"a,b\",\"q\"\"q\",\"nl\nnl\"\n");
}

TEST_CASE("write/read round trip") {
  std::vector<std::string> fields{"", "x,y", "\"", "multi\nline", "tail"};
  std::ostringstream out;
  csv::write_row(out, fields);
  auto rows = read_all(out.str());
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].fields == fields);
}

TEST_CASE("format_number is shortest round-trip and locale-free") {
  CHECK(csv::format_number(0.5) == "0.5");
  CHECK(csv::format_number(42.0) == "42");
  CHECK(csv::format_number(-3.25) == "-3.25");
  CHECK(csv::format_number(0.1) == "0.1");
  CHECK(csv::format_number(2.0 / 3.0) == "0.6666666666666666");
  CHECK(csv::format_number(std::numeric_limits<double>::quiet_NaN()) == "");
  // value survives a parse round trip exactly
  const double v = 0.12345678901234567;
  CHECK(std::stod(csv::format_number(v)) == v);
}
