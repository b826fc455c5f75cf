#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace vaxtag {

// RFC 4180 CSV. Reader accepts LF and CRLF endings and quoted fields with
// embedded delimiters, quotes ("") and newlines. Writer emits LF endings
// and quotes only when a field needs it.

using CsvRow = std::vector<std::string>;

/// Parses a whole document. Throws DataError on a lone quote or an
/// unterminated quoted field, naming the 1-based line where it started.
std::vector<CsvRow> parse_csv(std::istream& in);
std::vector<CsvRow> parse_csv_string(const std::string& text);

std::string csv_escape(const std::string& field);
void write_csv_row(std::ostream& out, const CsvRow& row);

} // namespace vaxtag
