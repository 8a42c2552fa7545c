#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "zrating/discriminant.hpp"
#include "zrating/errors.hpp"
#include "zrating/lmoments.hpp"
#include "zrating/pearson3.hpp"
#include "zrating/transform.hpp"
#include "zrating/types.hpp"

namespace zrating {

// One fully scored record: the raw input, its transform, the score, the
// per-industry distribution standardization and the assigned grade.
struct ScoredRecord {
    RatioRecord input;
    TransformedRecord transformed;
    double z_m = 0.0;
    P3Params industry_fit;
    double v = 0.0;  // standardized value (z - c) / alpha under the industry fit
    double h = 0.0;  // credit index
    RatingGrade grade = RatingGrade::CCC;
};

struct PipelineResult {
    std::vector<ScoredRecord> records;
    DiscriminantModel model;
    std::map<int, P3Params> industry_fits;
    ThresholdTable thresholds;
};

inline constexpr std::size_t kMinIndustryRecords = 3;

namespace detail {

inline void check_uniform_width(const std::vector<RatioRecord>& records) {
    if (records.empty()) throw SchemaError("pipeline: empty dataset");
    const std::size_t t = records.front().ratios.size();
    if (t == 0) throw SchemaError("pipeline: records carry no ratios");
    for (std::size_t i = 0; i < records.size(); ++i) {
        if (records[i].ratios.size() != t) {
            throw SchemaError("pipeline: record " + std::to_string(i + 1) + " has " +
                              std::to_string(records[i].ratios.size()) + " ratios, expected " +
                              std::to_string(t));
        }
    }
}

inline void score_one(ScoredRecord& rec, const ThresholdTable& thresholds) {
    auto [v, h] = credit_index_parts(rec.industry_fit, rec.z_m);
    rec.v = v;
    rec.h = h;
    rec.grade = assign_grade(h, thresholds);
}

}  // namespace detail

// Runs the rating procedure end to end: signed-log transform, bankruptcy
// index, discriminant fit (or an injected weight vector), scores, one P3 fit
// per industry from that industry's scores, and a standardized index plus
// grade per record. Output order matches input order.
//
// When `weights` is absent the discriminant is fitted from the data and every
// record must carry an agency grade. Industries with fewer than 3 records or
// with degenerate score spread are hard errors naming the industry.
inline PipelineResult run_pipeline(const std::vector<RatioRecord>& dataset,
                                   const std::optional<DiscriminantModel>& weights,
                                   const ThresholdTable& thresholds) {
    thresholds.validate();
    detail::check_uniform_width(dataset);
    const std::size_t t = dataset.front().ratios.size();

    auto transformed = transform_dataset(dataset);

    PipelineResult result;
    result.thresholds = thresholds;
    if (weights) {
        if (weights->weights.size() != t) {
            throw DimensionError("pipeline: injected weight vector has " +
                                 std::to_string(weights->weights.size()) +
                                 " entries, dataset has t = " + std::to_string(t));
        }
        result.model = *weights;
    } else {
        for (std::size_t i = 0; i < transformed.size(); ++i) {
            if (!transformed[i].bankruptcy) {
                throw SchemaError("pipeline: record " + std::to_string(i + 1) +
                                  " has no agency grade; fit mode requires graded rows");
            }
        }
        result.model = fit_mda(transformed);
    }

    result.records.resize(dataset.size());
    std::map<int, std::vector<std::size_t>> by_industry;
    for (std::size_t i = 0; i < dataset.size(); ++i) {
        auto& rec = result.records[i];
        rec.input = dataset[i];
        rec.transformed = transformed[i];
        rec.z_m = z_score(result.model, transformed[i].values);
        by_industry[dataset[i].industry].push_back(i);
    }

    for (const auto& [industry, indices] : by_industry) {
        if (indices.size() < kMinIndustryRecords) {
            throw FitError("pipeline: industry " + std::to_string(industry) + " has only " +
                           std::to_string(indices.size()) + " records (need >= " +
                           std::to_string(kMinIndustryRecords) + ")");
        }
        std::vector<double> scores;
        scores.reserve(indices.size());
        for (std::size_t i : indices) scores.push_back(result.records[i].z_m);
        P3Params fit;
        try {
            fit = fit_p3(l_moments(scores));
        } catch (const Error& e) {
            throw DegenerateSampleError("pipeline: industry " + std::to_string(industry) +
                                        ": " + e.what());
        }
        result.industry_fits[industry] = fit;
        for (std::size_t i : indices) {
            result.records[i].industry_fit = fit;
            detail::score_one(result.records[i], thresholds);
        }
    }
    return result;
}

// Scores unseen records against previously fitted artifacts; no refitting.
// Every record's industry must appear in `fits`.
inline std::vector<ScoredRecord> score_new(const std::vector<RatioRecord>& records,
                                           const DiscriminantModel& model,
                                           const std::map<int, P3Params>& fits,
                                           const ThresholdTable& thresholds) {
    thresholds.validate();
    detail::check_uniform_width(records);

    std::vector<ScoredRecord> out;
    out.reserve(records.size());
    for (std::size_t i = 0; i < records.size(); ++i) {
        ScoredRecord rec;
        rec.input = records[i];
        rec.transformed = transform_record(records[i]);
        rec.z_m = z_score(model, rec.transformed.values);
        const auto it = fits.find(records[i].industry);
        if (it == fits.end()) {
            throw LookupError("score: industry " + std::to_string(records[i].industry) +
                              " (record " + std::to_string(i + 1) +
                              ") is not in the fitted industry table");
        }
        rec.industry_fit = it->second;
        detail::score_one(rec, thresholds);
        out.push_back(std::move(rec));
    }
    return out;
}

}  // namespace zrating
