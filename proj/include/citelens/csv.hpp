#pragma once

// Minimal RFC-4180 CSV reading/writing. Quoted fields may contain commas,
// escaped quotes ("") and newlines; records end at LF or CRLF outside quotes.
// Numbers are written with the shortest round-trip representation
// (std::to_chars), independent of locale; NaN serializes as an empty field.

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace citelens::csv {

struct Row {
  std::vector<std::string> fields;
  std::size_t line = 0;  // 1-based physical line where the record starts
};

class Reader {
 public:
  // `name` is used in error messages ("citations.csv:17: ...").
  explicit Reader(std::istream& in, std::string name = "input");

  // Next record, or nullopt at end of input. Throws DataError on a stray
  // quote or an unterminated quoted field.
  std::optional<Row> next();

  const std::string& name() const { return name_; }

 private:
  std::istream& in_;
  std::string name_;
  std::size_t line_ = 1;
  bool done_ = false;
};

std::string quote_field(std::string_view field);
void write_row(std::ostream& out, std::span<const std::string> fields);

// Shortest decimal form that parses back to the same double. "" for NaN.
std::string format_number(double v);

}  // namespace citelens::csv
