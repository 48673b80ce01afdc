#pragma once

#include <string>
#include <vector>

namespace sac {
namespace csv {

using Row = std::vector<std::string>;

/// RFC 4180 reader: quoted fields, "" escapes, LF or CRLF records.
/// Throws std::runtime_error on an unterminated quote or stray quote.
std::vector<Row> parse(const std::string& text);

/// Quotes fields containing commas, quotes or newlines; LF records.
std::string write(const std::vector<Row>& rows);

std::string escape_field(const std::string& field);

}  // namespace csv
}  // namespace sac
