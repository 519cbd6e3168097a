#ifndef PATGRAPH_CSV_HPP
#define PATGRAPH_CSV_HPP

#include <fstream>
#include <istream>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "error.hpp"

namespace patgraph::csv {

/// Quotes a field when it contains a comma, quote or line break.
inline std::string field(std::string_view s) {
    if (s.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(s);
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

template <class... Fields>
void write_row(std::ostream& out, const Fields&... fields) {
    bool first = true;
    ((out << (first ? "" : ",") << field(fields), first = false), ...);
    out << '\n';
}

inline void write_row(std::ostream& out, const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) out << (i ? "," : "") << field(fields[i]);
    out << '\n';
}

/// Parses RFC 4180-style CSV (LF or CRLF). Quoted fields may span lines.
inline std::vector<std::vector<std::string>> read(std::istream& in) {
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> row;
    std::string cur;
    bool quoted = false, field_started = false;
    char c;
    auto end_field = [&] {
        row.push_back(std::move(cur));
        cur.clear();
        field_started = false;
    };
    while (in.get(c)) {
        if (quoted) {
            if (c == '"') {
                if (in.peek() == '"') {
                    in.get(c);
                    cur += '"';
                } else {
                    quoted = false;
                }
            } else {
                cur += c;
            }
            continue;
        }
        if (c == '"' && !field_started && cur.empty()) {
            quoted = true;
            field_started = true;
        } else if (c == ',') {
            end_field();
        } else if (c == '\n') {
            end_field();
            rows.push_back(std::move(row));
            row.clear();
        } else if (c == '\r') {
            // dropped; the following LF ends the row
        } else {
            cur += c;
            field_started = true;
        }
    }
    if (quoted) fail(ErrorCode::MalformedInput, "unterminated quoted CSV field");
    if (field_started || !cur.empty() || !row.empty()) {
        end_field();
        rows.push_back(std::move(row));
    }
    return rows;
}

inline std::ofstream open_out(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(ErrorCode::Io, "cannot open '" + path + "' for writing");
    return out;
}

inline std::ifstream open_in(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorCode::Io, "cannot open '" + path + "' for reading");
    return in;
}

} // namespace patgraph::csv

#endif
