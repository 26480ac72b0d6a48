#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "versecraft/error.hpp"

namespace versecraft {

// Fixed-point formatting used for every numeric value we emit (CSV and SVG).
// snprintf with the C locale keeps the bytes identical across platforms.
inline std::string fmt_fixed(double v, int precision = 6) {
    char buf[64];
    if (v == 0.0) v = 0.0; // normalize -0
    std::snprintf(buf, sizeof(buf), "%.*f", precision, v);
    return std::string(buf);
}

inline std::string csv_escape(const std::string& field) {
    if (field.find_first_of(",\"\n") == std::string::npos) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    out += '"';
    return out;
}

inline std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw MissingFile("cannot open file: " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw MissingFile("cannot write file: " + path.string());
    out << content;
}

} // namespace versecraft
