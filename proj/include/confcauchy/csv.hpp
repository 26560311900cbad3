#pragma once

#include <charconv>
#include <cstdint>
#include <fstream>
#include <span>
#include <string>
#include <vector>

#include "errors.hpp"

namespace confcauchy {

/// Shortest round-trip decimal form of a double (std::to_chars), at most 17
/// significant digits; '.' decimal point, locale-independent.
inline std::string format_double(double value) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, res.ptr);
}

/// CSV document with the pinned output format: comma separator, header
/// first, every row (header included) terminated by exactly one '\n'.
class csv_document {
public:
    explicit csv_document(std::vector<std::string> header)
        : columns_(header.size()) {
        if (header.empty())
            throw contract_error("csv_document: header must be nonempty");
        append_row(header);
    }

    void add_row(std::span<const std::string> cells) {
        if (cells.size() != columns_)
            throw contract_error("csv_document: row width mismatch");
        append_row(cells);
    }

    void add_row(std::span<const double> values) {
        std::vector<std::string> cells;
        cells.reserve(values.size());
        for (double v : values) cells.push_back(format_double(v));
        add_row(cells);
    }

    const std::string& text() const { return text_; }

    void write(const std::string& path) const {
        std::ofstream out(path, std::ios::binary);
        if (!out)
            throw contract_error("csv_document: cannot open " + path);
        out.write(text_.data(),
                  static_cast<std::streamsize>(text_.size()));
        if (!out)
            throw contract_error("csv_document: write failed for " + path);
    }

private:
    void append_row(std::span<const std::string> cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i > 0) text_ += ',';
            text_ += cells[i];
        }
        text_ += '\n';
    }

    std::size_t columns_;
    std::string text_;
};

/// FNV-1a 64-bit hash, used for config fingerprints in the run manifest.
inline std::uint64_t fnv1a_hash(std::span<const char> bytes) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (char c : bytes) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ull;
    }
    return h;
}

} // namespace confcauchy
