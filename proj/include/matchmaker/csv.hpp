#ifndef MATCHMAKER_CSV_HPP
#define MATCHMAKER_CSV_HPP

// Minimal RFC-4180 reader/writer. Quoted fields may contain commas, doubled
// quotes and line breaks; CRLF and LF record terminators are both accepted.

#include <charconv>
#include <istream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "matchmaker/error.hpp"

namespace matchmaker::csv {

struct Record {
  std::vector<std::string> fields;
  std::size_t line = 0;  // 1-based line on which the record starts
};

/// Reads every record of `in`. `source` is only used in error messages.
inline std::vector<Record> read_all(std::istream& in, const std::string& source) {
  std::vector<Record> records;
  Record current;
  std::string field;
  bool in_quotes = false;
  bool field_was_quoted = false;
  bool record_has_content = false;
  std::size_t line = 1;
  current.line = 1;

  auto end_field = [&] {
    current.fields.push_back(std::move(field));
    field.clear();
    field_was_quoted = false;
  };
  auto end_record = [&] {
    end_field();
    if (record_has_content || current.fields.size() > 1 || !current.fields.front().empty()) {
      records.push_back(std::move(current));
    }
    current = Record{};
    record_has_content = false;
  };

  char c = 0;
  while (in.get(c)) {
    if (in_quotes) {
      if (c == '"') {
        if (in.peek() == '"') {
          in.get(c);
          field.push_back('"');
        } else {
          in_quotes = false;
        }
      } else {
        if (c == '\n') ++line;
        field.push_back(c);
      }
      continue;
    }
    switch (c) {
      case '"':
        if (!field.empty() || field_was_quoted) {
          throw InputError(source + ":" + std::to_string(line) +
                           ": stray quote inside unquoted field");
        }
        in_quotes = true;
        field_was_quoted = true;
        record_has_content = true;
        break;
      case ',':
        end_field();
        record_has_content = true;
        break;
      case '\r':
        if (in.peek() != '\n') field.push_back(c);
        break;
      case '\n':
        end_record();
        ++line;
        current.line = line;
        break;
      default:
        if (field_was_quoted) {
          throw InputError(source + ":" + std::to_string(line) +
                           ": text after closing quote");
        }
        field.push_back(c);
        record_has_content = true;
    }
  }
  if (in_quotes) {
    throw InputError(source + ":" + std::to_string(current.line) + ": unterminated quoted field");
  }
  if (record_has_content || !field.empty()) end_record();
  return records;
}

inline std::vector<Record> parse(std::string_view text, const std::string& source) {
  std::istringstream in{std::string(text)};
  return read_all(in, source);
}

/// Quotes a field only when it contains a delimiter, quote or line break.
inline std::string escape(std::string_view field) {
  if (field.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

inline std::string join_row(const std::vector<std::string>& fields) {
  std::string out;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out.push_back(',');
    out += escape(fields[i]);
  }
  out.push_back('\n');
  return out;
}

/// Shortest round-trip decimal form, so reports are byte-stable.
inline std::string format_number(double value) {
  if (value == 0.0) return "0";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, res.ptr);
}

}  // namespace matchmaker::csv

#endif  // MATCHMAKER_CSV_HPP
