#include "sac/csv.hpp"

#include <stdexcept>

namespace sac {
namespace csv {

std::vector<Row> parse(const std::string& text) {
  std::vector<Row> rows;
  Row row;
  std::string field;
  bool in_quotes = false;
  bool field_was_quoted = false;
  bool any_field = false;

  auto end_field = [&] {
    row.push_back(field);
    field.clear();
    field_was_quoted = false;
    any_field = false;
  };
  auto end_row = [&] {
    end_field();
    rows.push_back(row);
    row.clear();
  };

  size_t i = 0;
  const size_t n = text.size();
  while (i < n) {
    char c = text[i];
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < n && text[i + 1] == '"') {
          field.push_back('"');
          i += 2;
          continue;
        }
        in_quotes = false;
        ++i;
        continue;
      }
      field.push_back(c);
      ++i;
      continue;
    }
    switch (c) {
      case '"':
        if (any_field || !field.empty())
          throw std::runtime_error("stray quote inside unquoted CSV field");
        in_quotes = true;
        field_was_quoted = true;
        any_field = true;
        ++i;
        break;
      case ',':
        end_field();
        ++i;
        break;
      case '\r':
        if (i + 1 < n && text[i + 1] == '\n') {
          end_row();
          i += 2;
        } else {
          field.push_back(c);  // lone CR is data
          ++i;
        }
        break;
      case '\n':
        end_row();
        ++i;
        break;
      default:
        if (field_was_quoted)
          throw std::runtime_error("data after closing quote in CSV field");
        field.push_back(c);
        any_field = true;
        ++i;
        break;
    }
  }
  if (in_quotes) throw std::runtime_error("unterminated quote in CSV input");
  // Final record without trailing newline.
  if (!field.empty() || any_field || !row.empty()) end_row();
  return rows;
}

std::string escape_field(const std::string& field) {
  bool needs_quotes = field.find_first_of(",\"\r\n") != std::string::npos;
  if (!needs_quotes) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += "\"\"";
    else out.push_back(c);
  }
  out += "\"";
  return out;
}

std::string write(const std::vector<Row>& rows) {
  std::string out;
  for (const Row& row : rows) {
    for (size_t i = 0; i < row.size(); ++i) {
      if (i) out.push_back(',');
      out += escape_field(row[i]);
    }
    out.push_back('\n');
  }
  return out;
}

}  // namespace csv
}  // namespace sac
