#pragma once

// Minimal CSV helpers shared by the dataset loaders and the CLI.
// Fields may be double-quoted; quotes inside quoted fields are doubled.

#include <charconv>
#include <cmath>
#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "scarif/error.hpp"

namespace scarif::csv {

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

inline std::vector<std::string> split_line(std::string_view line, std::size_t row) {
    std::vector<std::string> fields;
    std::string current;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    current.push_back('"');
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                current.push_back(c);
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.emplace_back(trim(current));
            current.clear();
        } else {
            current.push_back(c);
        }
    }
    if (quoted) throw ParseError(row, "", "unterminated quoted field");
    fields.emplace_back(trim(current));
    return fields;
}

inline std::string quote_if_needed(std::string_view s) {
    if (s.find_first_of(",\"\n") == std::string_view::npos) return std::string(s);
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += "\"\"";
        else out.push_back(c);
    }
    out += '"';
    return out;
}

/// Reads the next non-blank line; returns false at end of input.
inline bool next_line(std::istream& in, std::string& line, std::size_t& row) {
    while (std::getline(in, line)) {
        ++row;
        if (!trim(line).empty()) return true;
    }
    return false;
}

inline double parse_double(std::string_view cell, std::size_t row, const std::string& column) {
    cell = trim(cell);
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
    if (ec != std::errc() || ptr != cell.data() + cell.size() || !std::isfinite(value)) {
        throw ParseError(row, column, "expected a number, got '" + std::string(cell) + "'");
    }
    return value;
}

inline int parse_int(std::string_view cell, std::size_t row, const std::string& column) {
    cell = trim(cell);
    int value = 0;
    auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
    if (ec != std::errc() || ptr != cell.data() + cell.size()) {
        throw ParseError(row, column, "expected an integer, got '" + std::string(cell) + "'");
    }
    return value;
}

inline std::optional<double> parse_opt_double(std::string_view cell, std::size_t row, const std::string& column) {
    if (trim(cell).empty()) return std::nullopt;
    return parse_double(cell, row, column);
}

inline std::optional<int> parse_opt_int(std::string_view cell, std::size_t row, const std::string& column) {
    if (trim(cell).empty()) return std::nullopt;
    return parse_int(cell, row, column);
}

/// Shortest representation that round-trips.
inline std::string format_double(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, ptr);
}

inline std::string format_opt(const std::optional<double>& v) { return v ? format_double(*v) : std::string(); }
inline std::string format_opt(const std::optional<int>& v) { return v ? std::to_string(*v) : std::string(); }

}  // namespace scarif::csv
