#include "vaxtag/csv.hpp"

#include <istream>
#include <ostream>
#include <sstream>

#include "vaxtag/errors.hpp"

namespace vaxtag {

std::vector<CsvRow> parse_csv(std::istream& in) {
    std::vector<CsvRow> rows;
    CsvRow row;
    std::string field;
    bool in_quotes = false;
    bool field_was_quoted = false;
    bool row_has_content = false;
    size_t line = 1;
    size_t quote_open_line = 0;

    auto end_field = [&] {
        row.push_back(field);
        field.clear();
        field_was_quoted = false;
    };
    auto end_row = [&] {
        end_field();
        rows.push_back(std::move(row));
        row = CsvRow{};
        row_has_content = false;
    };

    char c;
    while (in.get(c)) {
        if (in_quotes) {
            if (c == '"') {
                if (in.peek() == '"') {
                    in.get(c);
                    field += '"';
                } else {
                    in_quotes = false;
                }
            } else {
                if (c == '\n') ++line;
                field += c;
            }
            continue;
        }
        switch (c) {
        case '"':
            if (!field.empty() || field_was_quoted) {
                throw DataError("csv: stray quote inside unquoted field at line " +
                                std::to_string(line));
            }
            in_quotes = true;
            field_was_quoted = true;
            quote_open_line = line;
            row_has_content = true;
            break;
        case ',':
            end_field();
            row_has_content = true;
            break;
        case '\r':
            // consumed with the LF that follows; a bare CR is kept as data
            if (in.peek() == '\n') break;
            field += c;
            row_has_content = true;
            break;
        case '\n':
            ++line;
            if (row_has_content || !field.empty() || !row.empty()) end_row();
            break;
        default:
            field += c;
            row_has_content = true;
            break;
        }
    }
    if (in_quotes) {
        throw DataError("csv: unterminated quoted field starting at line " +
                        std::to_string(quote_open_line));
    }
    if (row_has_content || !field.empty() || !row.empty()) end_row();
    return rows;
}

std::vector<CsvRow> parse_csv_string(const std::string& text) {
    std::istringstream in(text);
    return parse_csv(in);
}

std::string csv_escape(const std::string& field) {
    bool needs_quotes = field.find_first_of(",\"\n\r") != std::string::npos;
    if (!needs_quotes) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    out += '"';
    return out;
}

void write_csv_row(std::ostream& out, const CsvRow& row) {
    if (row.size() == 1 && row[0].empty()) {
        out << "\"\"\n"; // a bare empty line would read back as no row at all
        return;
    }
    for (size_t i = 0; i < row.size(); ++i) {
        if (i) out << ',';
        out << csv_escape(row[i]);
    }
    out << '\n';
}

} // namespace vaxtag
