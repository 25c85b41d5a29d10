#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "cwemap/errors.hpp"

namespace cwemap {

// RFC-4180 CSV: comma-delimited, double-quote quoting, "" escapes a quote
// inside a quoted field, records end with LF or CRLF, quoted fields may
// contain commas and newlines. All content is required to be valid UTF-8.

inline bool utf8_valid(std::string_view s) {
    std::size_t i = 0;
    while (i < s.size()) {
        unsigned char c = static_cast<unsigned char>(s[i]);
        std::size_t extra;
        unsigned cp_min;
        if (c < 0x80) { i += 1; continue; }
        else if ((c & 0xE0) == 0xC0) { extra = 1; cp_min = 0x80; }
        else if ((c & 0xF0) == 0xE0) { extra = 2; cp_min = 0x800; }
        else if ((c & 0xF8) == 0xF0) { extra = 3; cp_min = 0x10000; }
        else return false;
        if (i + extra >= s.size()) return false;
        unsigned cp = c & (0x3F >> extra);
        for (std::size_t k = 1; k <= extra; ++k) {
            unsigned char cc = static_cast<unsigned char>(s[i + k]);
            if ((cc & 0xC0) != 0x80) return false;
            cp = (cp << 6) | (cc & 0x3F);
        }
        if (cp < cp_min || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) return false;
        i += extra + 1;
    }
    return true;
}

inline std::string trim(std::string_view s) {
    std::size_t b = 0, e = s.size();
    while (b < e && (s[b] == ' ' || s[b] == '\t' || s[b] == '\r' || s[b] == '\n')) ++b;
    while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t' || s[e - 1] == '\r' || s[e - 1] == '\n')) --e;
    return std::string(s.substr(b, e - b));
}

struct csv_record {
    std::size_t line;    // 1-based physical line where the record starts
    std::vector<std::string> fields;
};

// Parses a full CSV document. Throws malformed_row on unterminated quotes,
// stray quotes inside unquoted fields, or invalid UTF-8.
inline std::vector<csv_record> parse_csv(std::string_view text) {
    if (!utf8_valid(text)) fail(errc::malformed_row, "input is not valid UTF-8");

    std::vector<csv_record> records;
    std::size_t i = 0, line = 1;
    while (i < text.size()) {
        csv_record rec;
        rec.line = line;
        bool record_done = false;
        while (!record_done) {
            std::string field;
            if (i < text.size() && text[i] == '"') {
                ++i; // opening quote
                bool closed = false;
                while (i < text.size()) {
                    char c = text[i];
                    if (c == '"') {
                        if (i + 1 < text.size() && text[i + 1] == '"') { field += '"'; i += 2; }
                        else { ++i; closed = true; break; }
                    } else {
                        if (c == '\n') ++line;
                        field += c;
                        ++i;
                    }
                }
                if (!closed)
                    fail(errc::malformed_row, "line " + std::to_string(rec.line) + ": unterminated quoted field");
                if (i < text.size() && text[i] != ',' && text[i] != '\n' && text[i] != '\r')
                    fail(errc::malformed_row, "line " + std::to_string(line) + ": garbage after closing quote");
            } else {
                while (i < text.size() && text[i] != ',' && text[i] != '\n' && text[i] != '\r') {
                    if (text[i] == '"')
                        fail(errc::malformed_row, "line " + std::to_string(line) + ": quote inside unquoted field");
                    field += text[i];
                    ++i;
                }
            }
            rec.fields.push_back(std::move(field));
            if (i >= text.size()) {
                record_done = true;
            } else if (text[i] == ',') {
                ++i;
            } else { // \r or \n
                if (text[i] == '\r' && i + 1 < text.size() && text[i + 1] == '\n') ++i;
                ++i;
                ++line;
                record_done = true;
            }
        }
        // A trailing newline produces no empty trailing record.
        if (!(rec.fields.size() == 1 && rec.fields[0].empty() && i >= text.size()))
            records.push_back(std::move(rec));
        else
            break;
    }
    return records;
}

inline std::vector<csv_record> read_csv_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(errc::missing_file, "cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_csv(buf.str());
}

inline std::string csv_quote(std::string_view field) {
    bool needs = false;
    for (char c : field)
        if (c == ',' || c == '"' || c == '\n' || c == '\r') { needs = true; break; }
    if (!needs) return std::string(field);
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    out += '"';
    return out;
}

inline std::string csv_join(const std::vector<std::string>& fields) {
    std::string out;
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) out += ',';
        out += csv_quote(fields[i]);
    }
    out += '\n';
    return out;
}

} // namespace cwemap
