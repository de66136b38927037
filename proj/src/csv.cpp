#include "citelens/csv.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>

#include "citelens/error.hpp"

namespace citelens::csv {

Reader::Reader(std::istream& in, std::string name)
    : in_(in), name_(std::move(name)) {}

std::optional<Row> Reader::next() {
  if (done_) return std::nullopt;

  Row row;
  row.line = line_;
  std::string field;
  bool in_quotes = false;
  bool field_was_quoted = false;
  bool saw_any = false;

  for (;;) {
    int ci = in_.get();
    if (ci == EOF) {
      if (in_quotes) {
        throw DataError(name_ + ":" + std::to_string(row.line) +
                        ": unterminated quoted field");
      }
      done_ = true;
      if (!saw_any && row.fields.empty() && field.empty()) return std::nullopt;
      row.fields.push_back(std::move(field));
      return row;
    }
    char c = static_cast<char>(ci);
    saw_any = true;

    if (in_quotes) {
      if (c == '"') {
        if (in_.peek() == '"') {
          in_.get();
          field.push_back('"');
        } else {
          in_quotes = false;
        }
      } else {
        if (c == '\n') ++line_;
        field.push_back(c);
      }
      continue;
    }

    switch (c) {
      case '"':
        if (!field.empty() || field_was_quoted) {
          throw DataError(name_ + ":" + std::to_string(line_) +
                          ": stray quote inside unquoted field");
        }
        in_quotes = true;
        field_was_quoted = true;
        break;
      case ',':
        row.fields.push_back(std::move(field));
        field.clear();
        field_was_quoted = false;
        break;
      case '\r':
        if (in_.peek() == '\n') in_.get();
        [[fallthrough]];
      case '\n':
        ++line_;
        row.fields.push_back(std::move(field));
        return row;
      default:
        field.push_back(c);
    }
  }
}

std::string quote_field(std::string_view field) {
  bool needs = field.find_first_of(",\"\r\n") != std::string_view::npos;
  if (!needs) return std::string(field);
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

void write_row(std::ostream& out, std::span<const std::string> fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out.put(',');
    out << quote_field(fields[i]);
  }
  out.put('\n');
}

std::string format_number(double v) {
  if (std::isnan(v)) return "";  // missing value
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  (void)ec;
  return std::string(buf, ptr);
}

}  // namespace citelens::csv
