// Batch front-end: dataset ingestion, fit/score/evaluate/sweep orchestration
// and report emission over CSV datasets of firm financial ratios.

#include <cstdint>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "zrating/zrating.hpp"

namespace {

struct CommonOptions {
    std::string input;
    std::string output;
    std::string model;
    std::string thresholds;
    std::string schema;
    std::string report;
    std::uint64_t seed = 1;
};

zrating::DatasetSchema resolve_schema(const CommonOptions& opt) {
    return opt.schema.empty() ? zrating::DatasetSchema{} : zrating::load_schema(opt.schema);
}

zrating::ThresholdTable resolve_thresholds(const CommonOptions& opt) {
    return opt.thresholds.empty() ? zrating::default_thresholds()
                                  : zrating::load_thresholds(opt.thresholds);
}

void print_matrix(const zrating::ClassificationMatrix& m, const std::string& label) {
    std::printf("%s: n1=%lld m1=%lld m2=%lld n2=%lld accuracy=%.4f type_i=%.4f type_ii=%.4f\n",
                label.c_str(), static_cast<long long>(m.n1), static_cast<long long>(m.m1),
                static_cast<long long>(m.m2), static_cast<long long>(m.n2), m.accuracy(),
                m.type_i(), m.type_ii());
}

int run_fit(const CommonOptions& opt) {
    const auto schema = resolve_schema(opt);
    const auto thresholds = resolve_thresholds(opt);
    const auto records = zrating::ingest(opt.input, schema);
    const auto result = zrating::run_pipeline(records, std::nullopt, thresholds);

    if (!opt.model.empty()) {
        zrating::ModelArtifact artifact{result.model, result.industry_fits, result.thresholds};
        zrating::save_model(artifact, opt.model);
        std::printf("model written to %s\n", opt.model.c_str());
    }
    if (!opt.output.empty()) {
        zrating::emit_scored(result.records, opt.output, schema);
        std::printf("scored records written to %s\n", opt.output.c_str());
    }
    if (!opt.report.empty()) {
        zrating::emit_report(zrating::fit_report_json(result), opt.report);
        std::printf("report written to %s\n", opt.report.c_str());
    }
    std::printf("fitted %zu records, %zu industries, t=%zu\n", result.records.size(),
                result.industry_fits.size(), result.model.weights.size());
    return 0;
}

int run_score(const CommonOptions& opt) {
    const auto schema = resolve_schema(opt);
    const auto artifact = zrating::load_model(opt.model);
    const auto thresholds =
        opt.thresholds.empty() ? artifact.thresholds : zrating::load_thresholds(opt.thresholds);
    const auto records = zrating::ingest(opt.input, schema);
    const auto scored =
        zrating::score_new(records, artifact.model, artifact.industry_fits, thresholds);
    zrating::emit_scored(scored, opt.output, schema);
    std::printf("scored %zu records to %s\n", scored.size(), opt.output.c_str());
    return 0;
}

int run_evaluate(const CommonOptions& opt, std::size_t synth_records) {
    const auto thresholds = resolve_thresholds(opt);
    std::vector<zrating::RatioRecord> records;
    if (synth_records > 0) {
        zrating::SyntheticConfig cfg;
        cfg.records = synth_records;
        records = zrating::generate_synthetic(opt.seed, cfg);
        std::printf("generated %zu synthetic records (seed %llu)\n", records.size(),
                    static_cast<unsigned long long>(opt.seed));
    } else {
        records = zrating::ingest(opt.input, resolve_schema(opt));
    }

    const auto ev = zrating::holdout_evaluate(records, opt.seed, thresholds);
    print_matrix(ev.holdout_matrix, "holdout (30% test)");
    std::printf("logistic Z_M: slope=%.4f wald=%.2f converged=%d\n", ev.logistic_zm.slope,
                ev.logistic_zm.wald_slope, ev.logistic_zm.converged ? 1 : 0);
    std::printf("logistic Z_A: slope=%.4f wald=%.2f\n", ev.logistic_za.slope,
                ev.logistic_za.wald_slope);
    std::printf("logistic Z_U: slope=%.4f wald=%.2f\n", ev.logistic_zu.slope,
                ev.logistic_zu.wald_slope);
    std::printf("F=%.4f (critical %.4f at 0.01) %s; spearman(Z_M,Z_A)=%.4f\n",
                ev.f_test_zm_za.f, ev.f_test_zm_za.critical_0_01,
                ev.f_test_zm_za.reject_at_0_01 ? "reject" : "accept", ev.spearman_zm_za);
    for (std::size_t i = 0; i < ev.sweep.matrices.size(); ++i) {
        print_matrix(ev.sweep.matrices[i],
                     "sweep BBB<=" + std::to_string(ev.sweep_bbb_uppers[i]));
    }
    if (!opt.report.empty()) {
        zrating::emit_report(zrating::evaluation_report_json(ev), opt.report);
        std::printf("report written to %s\n", opt.report.c_str());
    }
    return 0;
}

int run_sweep(const CommonOptions& opt, const std::vector<std::string>& variant_files) {
    const auto schema = resolve_schema(opt);
    const auto thresholds = resolve_thresholds(opt);
    const auto records = zrating::ingest(opt.input, schema);

    std::vector<zrating::ScoredRecord> scored;
    if (!opt.model.empty()) {
        const auto artifact = zrating::load_model(opt.model);
        scored = zrating::score_new(records, artifact.model, artifact.industry_fits, thresholds);
    } else {
        scored = zrating::run_pipeline(records, std::nullopt, thresholds).records;
    }

    std::vector<zrating::ThresholdTable> variants;
    std::vector<double> uppers;
    if (variant_files.empty()) {
        for (double upper : {0.0, 0.25, 0.5}) {
            variants.push_back(thresholds.with_upper(zrating::RatingGrade::BBB, upper));
            uppers.push_back(upper);
        }
    } else {
        for (const auto& file : variant_files) {
            variants.push_back(zrating::load_thresholds(file));
        }
    }

    const auto sweep = zrating::threshold_sweep(scored, variants);
    for (std::size_t i = 0; i < sweep.matrices.size(); ++i) {
        print_matrix(sweep.matrices[i], "variant " + std::to_string(i));
    }
    std::printf("best variant (min-max error): %zu\n", sweep.best_index);
    if (!opt.report.empty()) {
        zrating::emit_report(zrating::sweep_report_json(sweep, uppers), opt.report);
        std::printf("report written to %s\n", opt.report.c_str());
    }
    return 0;
}

int run_toy() {
    const auto result = zrating::run_toy_check();
    int failed = 0;
    for (const auto& check : result.checks) {
        if (check.display_only) {
            std::printf("NOTE %-18s expected %9.4f actual %9.5f (printed-value gap %.5f)\n",
                        check.name.c_str(), check.expected, check.actual,
                        std::fabs(check.actual - check.expected));
            continue;
        }
        if (!check.pass) ++failed;
        std::printf("%s %-18s expected %9.4f actual %9.5f tol %.4g\n",
                    check.pass ? "PASS" : "FAIL", check.name.c_str(), check.expected,
                    check.actual, check.tolerance);
    }
    std::printf("toy check: %zu comparisons, %d failed\n", result.checks.size(), failed);
    return result.chain_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"credit scoring and rating engine over CSV datasets"};
    app.require_subcommand(1);

    CommonOptions opt;
    std::size_t synth_records = 0;
    std::vector<std::string> variant_files;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--thresholds", opt.thresholds, "threshold table JSON file");
        sub->add_option("--schema", opt.schema, "dataset schema JSON file");
        sub->add_option("--seed", opt.seed, "seed for randomized protocols");
        sub->add_option("--report", opt.report, "write a JSON report here");
    };

    auto* fit = app.add_subcommand("fit", "fit weights and per-industry distributions");
    fit->add_option("--input", opt.input, "input CSV dataset")->required();
    fit->add_option("--model", opt.model, "write the fitted model artifact here");
    fit->add_option("--output", opt.output, "write scored training records here");
    add_common(fit);

    auto* score = app.add_subcommand("score", "score new records with a fitted model");
    score->add_option("--input", opt.input, "input CSV dataset")->required();
    score->add_option("--model", opt.model, "model artifact to apply")->required();
    score->add_option("--output", opt.output, "output CSV path")->required();
    add_common(score);

    auto* evaluate = app.add_subcommand("evaluate", "hold-out evaluation and score comparison");
    evaluate->add_option("--input", opt.input, "input CSV dataset (graded)");
    evaluate->add_option("--synth", synth_records,
                         "generate this many synthetic records instead of reading --input");
    add_common(evaluate);

    auto* sweep = app.add_subcommand("sweep", "threshold sensitivity sweep");
    sweep->add_option("--input", opt.input, "input CSV dataset (graded)")->required();
    sweep->add_option("--model", opt.model, "optional model artifact (otherwise refit)");
    sweep->add_option("--variant", variant_files, "threshold variant JSON file (repeatable)");
    add_common(sweep);

    auto* toy = app.add_subcommand("toy", "replay the embedded reference example");

    CLI11_PARSE(app, argc, argv);

    try {
        if (fit->parsed()) return run_fit(opt);
        if (score->parsed()) return run_score(opt);
        if (evaluate->parsed()) {
            if (opt.input.empty() && synth_records == 0) {
                throw zrating::ConfigError("evaluate: provide --input or --synth");
            }
            return run_evaluate(opt, synth_records);
        }
        if (sweep->parsed()) return run_sweep(opt, variant_files);
        if (toy->parsed()) return run_toy();
    } catch (const zrating::Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return e.exit_code();
    } catch (const std::exception& e) {
        std::fprintf(stderr, "internal error: %s\n", e.what());
        return 3;
    }
    return 0;
}
