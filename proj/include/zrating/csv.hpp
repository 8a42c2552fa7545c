#pragma once

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "zrating/errors.hpp"
#include "zrating/pipeline.hpp"
#include "zrating/types.hpp"

namespace zrating {

// Column layout of an input dataset. The default five-ratio layout matches
// the standard bankruptcy-study attribute set.
struct DatasetSchema {
    std::vector<std::string> ratio_columns = {"WC_TA", "RE_TA", "EBIT_TA", "MVE_BVTD", "S_TA"};
    std::string industry_column = "Industry";
    std::string year_column = "Year";
    std::string rating_column = "Rating";
    char delimiter = ',';
};

namespace detail {

inline std::vector<std::string> split_line(const std::string& line, char delimiter) {
    std::vector<std::string> cells;
    std::string cell;
    std::stringstream ss(line);
    while (std::getline(ss, cell, delimiter)) cells.push_back(cell);
    if (!line.empty() && line.back() == delimiter) cells.emplace_back();
    return cells;
}

inline std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

inline double parse_double(const std::string& cell, std::size_t row, const std::string& col) {
    const std::string text = trim(cell);
    if (text.empty()) {
        throw ParseError("row " + std::to_string(row) + ", column " + col + ": empty cell");
    }
    char* end = nullptr;
    errno = 0;
    const double v = std::strtod(text.c_str(), &end);
    if (errno != 0 || end != text.c_str() + text.size() || !std::isfinite(v)) {
        throw ParseError("row " + std::to_string(row) + ", column " + col +
                         ": cannot parse \"" + text + "\" as a finite number");
    }
    return v;
}

inline int parse_int(const std::string& cell, std::size_t row, const std::string& col) {
    const std::string text = trim(cell);
    char* end = nullptr;
    errno = 0;
    const long v = std::strtol(text.c_str(), &end, 10);
    if (text.empty() || errno != 0 || end != text.c_str() + text.size()) {
        throw ParseError("row " + std::to_string(row) + ", column " + col +
                         ": cannot parse \"" + text + "\" as an integer");
    }
    return static_cast<int>(v);
}

// Writes content to path through a sibling temp file + rename.
inline void atomic_write(const std::filesystem::path& path, const std::string& content) {
    const auto tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot open " + tmp + " for writing");
        out << content;
        out.flush();
        if (!out) throw IoError("failed writing " + tmp);
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) throw IoError("cannot rename " + tmp + " to " + path.string() + ": " + ec.message());
}

}  // namespace detail

// Reads a delimited dataset with a mandatory header row. Grades parse
// case-insensitively; an empty rating cell leaves the grade absent (allowed
// for score-only records). Errors carry the 1-based data-row number and the
// offending column name.
inline std::vector<RatioRecord> ingest(const std::filesystem::path& path,
                                       const DatasetSchema& schema = {}) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path.string());

    std::string line;
    if (!std::getline(in, line)) throw SchemaError(path.string() + ": missing header row");
    const auto header = detail::split_line(line, schema.delimiter);

    const auto find_column = [&](const std::string& name) {
        for (std::size_t i = 0; i < header.size(); ++i) {
            if (detail::trim(header[i]) == name) return i;
        }
        throw SchemaError(path.string() + ": missing column \"" + name + "\"");
    };

    std::vector<std::size_t> ratio_idx;
    for (const auto& name : schema.ratio_columns) ratio_idx.push_back(find_column(name));
    const std::size_t industry_idx = find_column(schema.industry_column);
    const std::size_t year_idx = find_column(schema.year_column);
    const std::size_t rating_idx = find_column(schema.rating_column);

    std::vector<RatioRecord> records;
    std::size_t row = 0;
    while (std::getline(in, line)) {
        ++row;
        if (detail::trim(line).empty()) continue;
        const auto cells = detail::split_line(line, schema.delimiter);
        if (cells.size() < header.size()) {
            throw ParseError("row " + std::to_string(row) + ": expected " +
                             std::to_string(header.size()) + " cells, got " +
                             std::to_string(cells.size()));
        }
        RatioRecord rec;
        rec.ratios.reserve(ratio_idx.size());
        for (std::size_t k = 0; k < ratio_idx.size(); ++k) {
            rec.ratios.push_back(
                detail::parse_double(cells[ratio_idx[k]], row, schema.ratio_columns[k]));
        }
        rec.industry = detail::parse_int(cells[industry_idx], row, schema.industry_column);
        rec.year = detail::parse_int(cells[year_idx], row, schema.year_column);
        const std::string rating = detail::trim(cells[rating_idx]);
        if (!rating.empty()) {
            const auto grade = parse_grade(rating);
            if (!grade) {
                throw ParseError("row " + std::to_string(row) + ", column " +
                                 schema.rating_column + ": unknown grade \"" + rating + "\"");
            }
            rec.grade = grade;
        }
        records.push_back(std::move(rec));
    }
    return records;
}

// Writes scored records as CSV: the input columns followed by z_m, v, h, the
// model grade and the binary prediction. Reals carry six decimals; row order
// is preserved and output is byte-identical across runs on identical input.
inline void emit_scored(const std::vector<ScoredRecord>& records,
                        const std::filesystem::path& path, const DatasetSchema& schema = {}) {
    if (records.empty()) throw DimensionError("emit_scored: empty record set");

    std::string out;
    for (const auto& name : schema.ratio_columns) out += name + schema.delimiter;
    out += schema.industry_column + schema.delimiter + schema.year_column + schema.delimiter +
           schema.rating_column;
    out += schema.delimiter;
    out += "z_m";
    out += schema.delimiter;
    out += "v";
    out += schema.delimiter;
    out += "h";
    out += schema.delimiter;
    out += "grade";
    out += schema.delimiter;
    out += "b_predicted";
    out += '\n';

    char buf[64];
    const auto real = [&](double v) {
        std::snprintf(buf, sizeof buf, "%.6f", v);
        out += buf;
    };
    for (const auto& rec : records) {
        if (rec.input.ratios.size() != schema.ratio_columns.size()) {
            throw DimensionError("emit_scored: record width does not match schema");
        }
        for (double x : rec.input.ratios) {
            real(x);
            out += schema.delimiter;
        }
        out += std::to_string(rec.input.industry) + schema.delimiter;
        out += std::to_string(rec.input.year) + schema.delimiter;
        if (rec.input.grade) out += to_string(*rec.input.grade);
        out += schema.delimiter;
        real(rec.z_m);
        out += schema.delimiter;
        real(rec.v);
        out += schema.delimiter;
        real(rec.h);
        out += schema.delimiter;
        out += to_string(rec.grade);
        out += schema.delimiter;
        out += std::to_string(bankruptcy_index(rec.grade));
        out += '\n';
    }
    detail::atomic_write(path, out);
}

}  // namespace zrating
