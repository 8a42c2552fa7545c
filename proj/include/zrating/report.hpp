#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "zrating/csv.hpp"
#include "zrating/evaluate.hpp"
#include "zrating/model_io.hpp"
#include "zrating/pipeline.hpp"

namespace zrating {

namespace detail {

inline nlohmann::json to_json(const ClassificationMatrix& m) {
    return {
        {"n1", m.n1},       {"m1", m.m1},           {"m2", m.m2},
        {"n2", m.n2},       {"accuracy", m.accuracy()},
        {"type_i", m.type_i()}, {"type_ii", m.type_ii()},
    };
}

inline nlohmann::json to_json(const LogisticFit& f) {
    return {
        {"intercept", f.intercept},
        {"slope", f.slope},
        {"wald_intercept", f.wald_intercept},
        {"wald_slope", f.wald_slope},
        {"converged", f.converged},
        {"iterations", f.iterations},
    };
}

inline nlohmann::json to_json(const ScoreDescriptives& d) {
    return {
        {"mean", d.mean}, {"sd", d.sd}, {"q25", d.q25}, {"median", d.median}, {"q75", d.q75},
    };
}

inline nlohmann::json to_json(const DiscriminantModel& m) {
    return {
        {"t", m.weights.size()},
        {"weights", m.weights},
        {"normalization", m.normalization},
        {"group_mean_bankrupt", m.mean_bankrupt},
        {"group_mean_safe", m.mean_safe},
    };
}

inline nlohmann::json industry_fits_json(const std::map<int, P3Params>& fits) {
    nlohmann::json out = nlohmann::json::object();
    for (const auto& [id, p] : fits) {
        out[std::to_string(id)] = {
            {"location_c", p.location_c},
            {"scale_alpha", p.scale_alpha},
            {"shape_eta", p.shape_eta},
            {"mirrored", p.mirrored},
        };
    }
    return out;
}

inline nlohmann::json sweep_json(const SweepResult& sweep, const std::vector<double>& uppers) {
    nlohmann::json variants = nlohmann::json::array();
    for (std::size_t i = 0; i < sweep.matrices.size(); ++i) {
        nlohmann::json entry = to_json(sweep.matrices[i]);
        if (i < uppers.size()) entry["bbb_upper"] = uppers[i];
        variants.push_back(entry);
    }
    return {{"variants", variants}, {"best_index", sweep.best_index}};
}

}  // namespace detail

// Report of a plain fit/score run: discriminant weights and the per-industry
// distribution table.
inline nlohmann::json fit_report_json(const PipelineResult& result) {
    return {
        {"discriminant", detail::to_json(result.model)},
        {"industry_fits", detail::industry_fits_json(result.industry_fits)},
        {"records", result.records.size()},
    };
}

// Full evaluation report: hold-out confusion, logistic comparison with Wald
// statistics, variance-ratio test, rank correlation, descriptives and the
// threshold sweep.
inline nlohmann::json evaluation_report_json(const HoldoutEvaluation& ev) {
    nlohmann::json descriptives = nlohmann::json::object();
    for (const auto& d : ev.descriptives) descriptives[d.name] = detail::to_json(d);
    return {
        {"discriminant", detail::to_json(ev.trained.model)},
        {"industry_fits", detail::industry_fits_json(ev.trained.industry_fits)},
        {"holdout",
         {{"train_records",
           ev.trained.records.size()},
          {"test_records", ev.test_scored.size()},
          {"matrix", detail::to_json(ev.holdout_matrix)}}},
        {"logistic",
         {{"Z_M", detail::to_json(ev.logistic_zm)},
          {"Z_A", detail::to_json(ev.logistic_za)},
          {"Z_U", detail::to_json(ev.logistic_zu)}}},
        {"f_test",
         {{"f", ev.f_test_zm_za.f},
          {"df_num", ev.f_test_zm_za.df_num},
          {"df_den", ev.f_test_zm_za.df_den},
          {"p_two_sided", ev.f_test_zm_za.p_two_sided},
          {"critical_0_01", ev.f_test_zm_za.critical_0_01},
          {"reject_at_0_01", ev.f_test_zm_za.reject_at_0_01}}},
        {"spearman_zm_za", ev.spearman_zm_za},
        {"descriptives", descriptives},
        {"threshold_sweep", detail::sweep_json(ev.sweep, ev.sweep_bbb_uppers)},
    };
}

// Report of a sweep-only run.
inline nlohmann::json sweep_report_json(const SweepResult& sweep,
                                        const std::vector<double>& uppers) {
    return {{"threshold_sweep", detail::sweep_json(sweep, uppers)}};
}

inline void emit_report(const nlohmann::json& report, const std::filesystem::path& path) {
    detail::atomic_write(path, report.dump(2) + "\n");
}

}  // namespace zrating
