#ifndef THIRDQ_CSV_HPP
#define THIRDQ_CSV_HPP

#include <charconv>
#include <cstdint>
#include <fstream>
#include <string>
#include <system_error>
#include <variant>
#include <vector>

#include "thirdq/errors.hpp"

namespace thirdq {

/// Scientific notation with 17 significant digits: round-trip exact for double,
/// locale independent.
inline std::string format_double(double v) {
    char buf[40];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::scientific, 16);
    if (res.ec != std::errc()) throw io_error("format_double: conversion failed");
    return std::string(buf, res.ptr);
}

using CsvCell = std::variant<double, long long, std::string>;

inline std::string format_cell(const CsvCell& c) {
    if (std::holds_alternative<double>(c)) return format_double(std::get<double>(c));
    if (std::holds_alternative<long long>(c)) return std::to_string(std::get<long long>(c));
    return std::get<std::string>(c);
}

/// In-memory CSV table with a fixed column schema.
class CsvTable {
public:
    explicit CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

    void add_row(std::vector<CsvCell> row) {
        if (row.size() != header_.size())
            throw std::domain_error("CsvTable: row width does not match header");
        rows_.push_back(std::move(row));
    }

    std::size_t row_count() const { return rows_.size(); }
    const std::vector<std::string>& header() const { return header_; }

    /// UTF-8, comma separated, '.' decimal, LF line endings.
    std::string to_string() const {
        std::string out;
        for (std::size_t i = 0; i < header_.size(); ++i) {
            if (i) out += ',';
            out += header_[i];
        }
        out += '\n';
        for (const auto& row : rows_) {
            for (std::size_t i = 0; i < row.size(); ++i) {
                if (i) out += ',';
                out += format_cell(row[i]);
            }
            out += '\n';
        }
        return out;
    }

private:
    std::vector<std::string> header_;
    std::vector<std::vector<CsvCell>> rows_;
};

/// FNV-1a 64-bit content digest, hex encoded.
inline std::string fnv1a64_hex(const std::string& bytes) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char b : bytes) {
        h ^= b;
        h *= 1099511628211ull;
    }
    char buf[17];
    for (int i = 15; i >= 0; --i) {
        buf[i] = "0123456789abcdef"[h & 0xf];
        h >>= 4;
    }
    buf[16] = '\0';
    return std::string(buf);
}

struct EmittedFile {
    std::string path;
    std::size_t rows = 0;
    std::string digest;
};

/// Writes the table to disk (binary mode keeps LF endings) and reports its digest.
inline EmittedFile emit_csv(const CsvTable& table, const std::string& path) {
    const std::string body = table.to_string();
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw io_error("emit_csv: cannot open " + path + " for writing");
    out.write(body.data(), static_cast<std::streamsize>(body.size()));
    out.flush();
    if (!out) throw io_error("emit_csv: write to " + path + " failed");
    return {path, table.row_count(), fnv1a64_hex(body)};
}

} // namespace thirdq

#endif
