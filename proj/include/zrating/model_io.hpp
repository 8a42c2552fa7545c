#pragma once

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "zrating/csv.hpp"
#include "zrating/discriminant.hpp"
#include "zrating/pearson3.hpp"

namespace zrating {

// Everything a scoring run needs: the discriminant, the per-industry
// distribution fits, and the threshold table in force when fitting.
struct ModelArtifact {
    DiscriminantModel model;
    std::map<int, P3Params> industry_fits;
    ThresholdTable thresholds = default_thresholds();
};

namespace detail {

inline std::string full_precision(double v) {
    if (v == std::numeric_limits<double>::infinity()) return "inf";
    if (v == -std::numeric_limits<double>::infinity()) return "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline std::string join_reals(const std::vector<double>& values) {
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) out += ' ';
        out += full_precision(values[i]);
    }
    return out;
}

inline double parse_model_real(const std::string& text, const std::string& key) {
    const std::string t = trim(text);
    if (t == "inf") return std::numeric_limits<double>::infinity();
    if (t == "-inf") return -std::numeric_limits<double>::infinity();
    char* end = nullptr;
    const double v = std::strtod(t.c_str(), &end);
    if (t.empty() || end != t.c_str() + t.size()) {
        throw ParseError("model artifact: bad value for " + key + ": \"" + t + "\"");
    }
    return v;
}

inline std::vector<double> parse_reals(const std::string& text, const std::string& key) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string tok;
    while (ss >> tok) out.push_back(parse_model_real(tok, key));
    return out;
}

}  // namespace detail

// Flat key-value serialization at full decimal precision. Keys are fixed by
// the file format; weights and matrix rows are space-separated lists.
inline void save_model(const ModelArtifact& artifact, const std::filesystem::path& path) {
    const auto& m = artifact.model;
    std::string out;
    out += "format = zrating-model-v1\n";
    out += "t = " + std::to_string(m.weights.size()) + "\n";
    out += "normalization = " + m.normalization + "\n";
    out += "weights = " + detail::join_reals(m.weights) + "\n";
    out += "group_mean_bankrupt = " + detail::join_reals(m.mean_bankrupt) + "\n";
    out += "group_mean_safe = " + detail::join_reals(m.mean_safe) + "\n";
    for (std::size_t r = 0; r < m.pooled_scatter.size(); ++r) {
        out += "pooled_scatter_row_" + std::to_string(r) + " = " +
               detail::join_reals(m.pooled_scatter[r]) + "\n";
    }
    std::string ids;
    for (const auto& [id, fit] : artifact.industry_fits) {
        ids += (ids.empty() ? "" : " ") + std::to_string(id);
    }
    out += "industries = " + ids + "\n";
    for (const auto& [id, fit] : artifact.industry_fits) {
        const std::string prefix = "industry." + std::to_string(id) + ".";
        out += prefix + "location_c = " + detail::full_precision(fit.location_c) + "\n";
        out += prefix + "scale_alpha = " + detail::full_precision(fit.scale_alpha) + "\n";
        out += prefix + "shape_eta = " + detail::full_precision(fit.shape_eta) + "\n";
        out += prefix + "mirrored = " + (fit.mirrored ? std::string("1") : std::string("0")) +
               "\n";
    }
    for (const auto& [cut, grade] : artifact.thresholds.boundaries) {
        out += "threshold." + std::string(to_string(grade)) + " = " +
               detail::full_precision(cut) + "\n";
    }
    detail::atomic_write(path, out);
}

inline ModelArtifact load_model(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open model artifact " + path.string());

    std::map<std::string, std::string> kv;
    std::string line;
    while (std::getline(in, line)) {
        if (detail::trim(line).empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ParseError("model artifact: malformed line \"" + line + "\"");
        }
        kv[detail::trim(line.substr(0, eq))] = detail::trim(line.substr(eq + 1));
    }
    const auto need = [&](const std::string& key) -> const std::string& {
        const auto it = kv.find(key);
        if (it == kv.end()) throw ParseError("model artifact: missing key " + key);
        return it->second;
    };

    if (need("format") != "zrating-model-v1") {
        throw ParseError("model artifact: unsupported format " + need("format"));
    }
    ModelArtifact artifact;
    auto& m = artifact.model;
    const auto t = static_cast<std::size_t>(std::stoul(need("t")));
    m.normalization = need("normalization");
    m.weights = detail::parse_reals(need("weights"), "weights");
    m.mean_bankrupt = detail::parse_reals(need("group_mean_bankrupt"), "group_mean_bankrupt");
    m.mean_safe = detail::parse_reals(need("group_mean_safe"), "group_mean_safe");
    if (m.weights.size() != t || m.mean_bankrupt.size() != t || m.mean_safe.size() != t) {
        throw ParseError("model artifact: vector lengths disagree with t");
    }
    m.pooled_scatter.clear();
    for (std::size_t r = 0; r < t; ++r) {
        const auto key = "pooled_scatter_row_" + std::to_string(r);
        auto row = detail::parse_reals(need(key), key);
        if (row.size() != t) throw ParseError("model artifact: bad row length in " + key);
        m.pooled_scatter.push_back(std::move(row));
    }

    std::stringstream ids(need("industries"));
    int id = 0;
    while (ids >> id) {
        const std::string prefix = "industry." + std::to_string(id) + ".";
        P3Params fit;
        fit.location_c = detail::parse_model_real(need(prefix + "location_c"), prefix + "location_c");
        fit.scale_alpha =
            detail::parse_model_real(need(prefix + "scale_alpha"), prefix + "scale_alpha");
        fit.shape_eta = detail::parse_model_real(need(prefix + "shape_eta"), prefix + "shape_eta");
        fit.mirrored = need(prefix + "mirrored") == "1";
        artifact.industry_fits[id] = fit;
    }

    for (auto& [cut, grade] : artifact.thresholds.boundaries) {
        const auto key = "threshold." + std::string(to_string(grade));
        cut = detail::parse_model_real(need(key), key);
    }
    artifact.thresholds.validate();
    return artifact;
}

// Threshold override file: a JSON object mapping each grade to its inclusive
// upper H cutoff, with null for the unbounded top grade, e.g.
//   {"CCC": -2.0, "B": -1.5, "BB": -1.0, "BBB": 0.0, "A": 1.5, "AA": 2.0, "AAA": null}
inline ThresholdTable load_thresholds(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open thresholds file " + path.string());
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("thresholds file " + path.string() + ": " + e.what());
    }
    if (!doc.is_object()) throw ConfigError("thresholds file must hold a JSON object");

    std::map<RatingGrade, double> cuts;
    for (const auto& [key, value] : doc.items()) {
        const auto grade = parse_grade(key);
        if (!grade) throw ConfigError("thresholds file: unknown grade \"" + key + "\"");
        if (value.is_null()) {
            cuts[*grade] = std::numeric_limits<double>::infinity();
        } else if (value.is_number()) {
            cuts[*grade] = value.get<double>();
        } else {
            throw ConfigError("thresholds file: cutoff for " + key + " must be a number or null");
        }
    }
    if (cuts.size() != static_cast<std::size_t>(kGradeCount)) {
        throw ConfigError("thresholds file: all seven grades required");
    }
    ThresholdTable table;
    std::size_t k = 0;
    for (const auto& [grade, cut] : cuts) table.boundaries[k++] = {cut, grade};
    std::sort(table.boundaries.begin(), table.boundaries.end());
    table.validate();
    return table;
}

// Schema override file: JSON with any of ratio_columns, industry_column,
// year_column, rating_column, delimiter.
inline DatasetSchema load_schema(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open schema file " + path.string());
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("schema file " + path.string() + ": " + e.what());
    }
    DatasetSchema schema;
    if (doc.contains("ratio_columns")) {
        schema.ratio_columns = doc["ratio_columns"].get<std::vector<std::string>>();
        if (schema.ratio_columns.empty()) {
            throw ConfigError("schema file: ratio_columns must be nonempty");
        }
    }
    if (doc.contains("industry_column")) schema.industry_column = doc["industry_column"];
    if (doc.contains("year_column")) schema.year_column = doc["year_column"];
    if (doc.contains("rating_column")) schema.rating_column = doc["rating_column"];
    if (doc.contains("delimiter")) {
        const std::string d = doc["delimiter"];
        if (d.size() != 1) throw ConfigError("schema file: delimiter must be one character");
        schema.delimiter = d[0];
    }
    for (const auto& rc : schema.ratio_columns) {
        if (rc == schema.industry_column || rc == schema.year_column ||
            rc == schema.rating_column) {
            throw ConfigError("schema file: ratio column \"" + rc + "\" collides with a label column");
        }
    }
    return schema;
}

}  // namespace zrating
