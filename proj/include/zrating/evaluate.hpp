#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "zrating/errors.hpp"
#include "zrating/pearson3.hpp"
#include "zrating/pipeline.hpp"
#include "zrating/stats.hpp"
#include "zrating/transform.hpp"

namespace zrating {

// 2x2 hit/miss classification table over the binary bankruptcy index.
//   n1: bankrupt predicted bankrupt        m1: bankrupt predicted safe (Type I)
//   m2: safe predicted bankrupt (Type II)  n2: safe predicted safe
struct ClassificationMatrix {
    std::int64_t n1 = 0;
    std::int64_t m1 = 0;
    std::int64_t m2 = 0;
    std::int64_t n2 = 0;

    std::int64_t total() const { return n1 + m1 + m2 + n2; }
    double accuracy() const {
        return static_cast<double>(n1 + n2) / static_cast<double>(total());
    }
    double type_i() const {
        const std::int64_t bankrupt = n1 + m1;
        return bankrupt == 0 ? std::numeric_limits<double>::quiet_NaN()
                             : static_cast<double>(m1) / static_cast<double>(bankrupt);
    }
    double type_ii() const {
        const std::int64_t safe = n2 + m2;
        return safe == 0 ? std::numeric_limits<double>::quiet_NaN()
                         : static_cast<double>(m2) / static_cast<double>(safe);
    }
};

inline ClassificationMatrix confusion(const std::vector<int>& actual,
                                      const std::vector<int>& predicted) {
    if (actual.empty()) throw DimensionError("confusion: empty label vectors");
    if (actual.size() != predicted.size()) {
        throw DimensionError("confusion: " + std::to_string(actual.size()) + " actual vs " +
                             std::to_string(predicted.size()) + " predicted labels");
    }
    ClassificationMatrix m;
    for (std::size_t i = 0; i < actual.size(); ++i) {
        if (actual[i] == 1) {
            predicted[i] == 1 ? ++m.n1 : ++m.m1;
        } else {
            predicted[i] == 1 ? ++m.m2 : ++m.n2;
        }
    }
    return m;
}

// Collapses model-assigned grades to the binary bankruptcy index, using the
// same partition as the agency-grade mapping.
inline std::vector<int> rating_to_binary_prediction(const std::vector<RatingGrade>& grades) {
    std::vector<int> out;
    out.reserve(grades.size());
    for (RatingGrade g : grades) out.push_back(bankruptcy_index(g));
    return out;
}

// Maximum-likelihood logit of a binary label on a single score, fitted by
// iteratively reweighted least squares (Newton steps on the log-likelihood).
// Wald statistics are squared coefficient/standard-error ratios from the
// observed information at the final iterate. Quasi-separated data stops at
// the iteration cap with converged = false instead of diverging.
struct LogisticFit {
    double intercept = 0.0;
    double slope = 0.0;
    double wald_intercept = 0.0;
    double wald_slope = 0.0;
    bool converged = false;
    int iterations = 0;
};

inline constexpr int kLogisticMaxIterations = 100;
inline constexpr double kLogisticTolerance = 1e-8;

inline LogisticFit fit_logistic(const std::vector<double>& z, const std::vector<int>& b) {
    if (z.size() != b.size()) {
        throw DimensionError("fit_logistic: score/label length mismatch");
    }
    if (z.size() < 3) throw InsufficientSampleError("fit_logistic: need n >= 3");
    const bool has0 = std::find(b.begin(), b.end(), 0) != b.end();
    const bool has1 = std::find(b.begin(), b.end(), 1) != b.end();
    if (!has0 || !has1) throw FitError("fit_logistic: labels contain a single class");

    const auto sigmoid = [](double e) {
        if (e >= 0.0) return 1.0 / (1.0 + std::exp(-e));
        const double x = std::exp(e);
        return x / (1.0 + x);
    };

    LogisticFit fit;
    double b0 = 0.0, b1 = 0.0;
    double h00 = 0.0, h01 = 0.0, h11 = 0.0;
    for (int it = 1; it <= kLogisticMaxIterations; ++it) {
        fit.iterations = it;
        double g0 = 0.0, g1 = 0.0;
        h00 = h01 = h11 = 0.0;
        for (std::size_t i = 0; i < z.size(); ++i) {
            const double p = sigmoid(b0 + b1 * z[i]);
            const double r = static_cast<double>(b[i]) - p;
            const double w = p * (1.0 - p);
            g0 += r;
            g1 += r * z[i];
            h00 += w;
            h01 += w * z[i];
            h11 += w * z[i] * z[i];
        }
        if (std::hypot(g0, g1) < kLogisticTolerance) {
            fit.converged = true;
            break;
        }
        const double det = h00 * h11 - h01 * h01;
        if (!(det > 0.0) || !std::isfinite(det)) break;  // flat or separated likelihood
        b0 += (h11 * g0 - h01 * g1) / det;
        b1 += (-h01 * g0 + h00 * g1) / det;
    }

    fit.intercept = b0;
    fit.slope = b1;
    if (fit.converged) {
        // Quasi-separated data drives every fitted probability to 0 or 1; the
        // gradient then vanishes along a divergent coefficient path, so a small
        // gradient alone does not certify a maximum. If even the closest
        // observation is pinned (|linear predictor| > ~13.8, p within 1e-6 of
        // its label), report non-convergence.
        double min_eta = std::numeric_limits<double>::infinity();
        for (double zi : z) min_eta = std::min(min_eta, std::fabs(b0 + b1 * zi));
        if (min_eta > 13.8) fit.converged = false;
    }
    const double det = h00 * h11 - h01 * h01;
    if (det > 0.0 && std::isfinite(det)) {
        const double var_intercept = h11 / det;
        const double var_slope = h00 / det;
        fit.wald_intercept = b0 * b0 / var_intercept;
        fit.wald_slope = b1 * b1 / var_slope;
    }
    return fit;
}

// Two-sided variance-ratio test at the 0.01 level. F is the larger sample
// variance over the smaller; the critical value comes straight from the F
// distribution for the matching degrees of freedom.
struct FTestResult {
    double f = 0.0;
    std::size_t df_num = 0;
    std::size_t df_den = 0;
    double p_two_sided = 1.0;
    double critical_0_01 = 0.0;  // upper critical value at alpha/2 = 0.005
    bool reject_at_0_01 = false;
};

inline FTestResult f_test_variance(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() < 2 || b.size() < 2) {
        throw InsufficientSampleError("f_test: both samples need n >= 2");
    }
    const double va = detail::sample_variance(a);
    const double vb = detail::sample_variance(b);
    if (!(va > 0.0) || !(vb > 0.0)) {
        throw DegenerateSampleError("f_test: zero variance sample");
    }
    FTestResult r;
    if (va >= vb) {
        r.f = va / vb;
        r.df_num = a.size() - 1;
        r.df_den = b.size() - 1;
    } else {
        r.f = vb / va;
        r.df_num = b.size() - 1;
        r.df_den = a.size() - 1;
    }
    const double df1 = static_cast<double>(r.df_num);
    const double df2 = static_cast<double>(r.df_den);
    const double upper = detail::f_upper_tail(r.f, df1, df2);
    r.p_two_sided = std::min(1.0, 2.0 * upper);
    r.critical_0_01 = detail::f_upper_critical(0.005, df1, df2);
    r.reject_at_0_01 = r.f > r.critical_0_01;
    return r;
}

namespace detail {

// Ranks with average ranks assigned to ties.
inline std::vector<double> ranks(const std::vector<double>& x) {
    const std::size_t n = x.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });
    std::vector<double> r(n, 0.0);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && x[order[j + 1]] == x[order[i]]) ++j;
        const double avg = 0.5 * (static_cast<double>(i + 1) + static_cast<double>(j + 1));
        for (std::size_t k = i; k <= j; ++k) r[order[k]] = avg;
        i = j + 1;
    }
    return r;
}

}  // namespace detail

// Spearman rank correlation: Pearson correlation of the rank vectors, with
// average ranks for ties.
inline double spearman_rho(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size()) throw DimensionError("spearman_rho: length mismatch");
    if (a.size() < 3) throw InsufficientSampleError("spearman_rho: need n >= 3");
    const auto ra = detail::ranks(a);
    const auto rb = detail::ranks(b);
    const double ma = detail::mean(ra);
    const double mb = detail::mean(rb);
    double sab = 0.0, saa = 0.0, sbb = 0.0;
    for (std::size_t i = 0; i < ra.size(); ++i) {
        const double da = ra[i] - ma;
        const double db = rb[i] - mb;
        sab += da * db;
        saa += da * da;
        sbb += db * db;
    }
    if (!(saa > 0.0) || !(sbb > 0.0)) {
        throw NumericalError("spearman_rho: constant vector, correlation undefined");
    }
    return sab / std::sqrt(saa * sbb);
}

// Re-grades a scored set from its stored H values under each threshold
// variant (no refit) and rebuilds the binary confusion per variant.
struct SweepResult {
    std::vector<ClassificationMatrix> matrices;
    std::size_t best_index = 0;  // variant minimizing max(Type I, Type II)
};

inline SweepResult threshold_sweep(const std::vector<ScoredRecord>& scored,
                                   const std::vector<ThresholdTable>& variants) {
    if (scored.empty()) throw DimensionError("threshold_sweep: empty scored set");
    if (variants.empty()) throw ConfigError("threshold_sweep: no variants given");

    std::vector<int> actual;
    actual.reserve(scored.size());
    for (std::size_t i = 0; i < scored.size(); ++i) {
        if (!scored[i].input.grade) {
            throw SchemaError("threshold_sweep: record " + std::to_string(i + 1) +
                              " has no actual grade");
        }
        actual.push_back(bankruptcy_index(*scored[i].input.grade));
    }

    SweepResult result;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t v = 0; v < variants.size(); ++v) {
        variants[v].validate();
        std::vector<int> predicted;
        predicted.reserve(scored.size());
        for (const auto& rec : scored) {
            predicted.push_back(bankruptcy_index(assign_grade(rec.h, variants[v])));
        }
        const ClassificationMatrix m = confusion(actual, predicted);
        const double worst = std::max(m.type_i(), m.type_ii());
        if (worst < best) {
            best = worst;
            result.best_index = v;
        }
        result.matrices.push_back(m);
    }
    return result;
}

// Descriptive statistics of one score variant: mean, sample standard
// deviation and linear-interpolation quartiles.
struct ScoreDescriptives {
    std::string name;
    double mean = 0.0;
    double sd = 0.0;
    double q25 = 0.0;
    double median = 0.0;
    double q75 = 0.0;
};

inline ScoreDescriptives describe_scores(std::string name, const std::vector<double>& values) {
    if (values.empty()) throw DimensionError("describe_scores: empty sample");
    ScoreDescriptives d;
    d.name = std::move(name);
    d.mean = detail::mean(values);
    if (values.size() > 1) {
        d.sd = std::sqrt(detail::sample_variance(values));
    }
    std::vector<double> sorted = values;
    std::sort(sorted.begin(), sorted.end());
    d.q25 = detail::quantile_sorted(sorted, 0.25);
    d.median = detail::quantile_sorted(sorted, 0.50);
    d.q75 = detail::quantile_sorted(sorted, 0.75);
    return d;
}

// Side-by-side descriptives for the nonlinear score and the two fixed-weight
// variants computed over the same scored set.
inline std::vector<ScoreDescriptives> compare_scores_table(
    const std::vector<ScoredRecord>& scored) {
    if (scored.empty()) throw DimensionError("compare_scores_table: empty scored set");
    std::vector<double> zm, za, zu;
    zm.reserve(scored.size());
    za.reserve(scored.size());
    zu.reserve(scored.size());
    for (const auto& rec : scored) {
        zm.push_back(rec.z_m);
        za.push_back(z_score(ZScoreVariant::altman(), rec.input.ratios));
        zu.push_back(z_score(ZScoreVariant::updated(), rec.input.ratios));
    }
    return {describe_scores("Z_M", zm), describe_scores("Z_A", za), describe_scores("Z_U", zu)};
}

// -- hold-out evaluation protocol

// Seeded stratified split on the bankruptcy index: 70% of each class to
// train, the rest to test. Returned index lists are sorted ascending.
inline std::pair<std::vector<std::size_t>, std::vector<std::size_t>> stratified_split(
    const std::vector<RatioRecord>& records, std::uint64_t seed, double train_fraction = 0.7) {
    std::vector<std::size_t> class0, class1;
    for (std::size_t i = 0; i < records.size(); ++i) {
        if (!records[i].grade) {
            throw SchemaError("stratified_split: record " + std::to_string(i + 1) +
                              " has no grade");
        }
        (bankruptcy_index(*records[i].grade) == 1 ? class1 : class0).push_back(i);
    }
    std::mt19937_64 rng(seed);
    std::vector<std::size_t> train, test;
    for (auto* cls : {&class0, &class1}) {
        std::shuffle(cls->begin(), cls->end(), rng);
        const auto k = static_cast<std::size_t>(
            std::lround(train_fraction * static_cast<double>(cls->size())));
        train.insert(train.end(), cls->begin(), cls->begin() + k);
        test.insert(test.end(), cls->begin() + k, cls->end());
    }
    std::sort(train.begin(), train.end());
    std::sort(test.begin(), test.end());
    return {std::move(train), std::move(test)};
}

struct HoldoutEvaluation {
    PipelineResult trained;                 // pipeline fitted on the training split
    std::vector<ScoredRecord> test_scored;  // held-out records scored via the fit
    ClassificationMatrix holdout_matrix;    // model grades vs actual labels on test
    LogisticFit logistic_zm;                // label on Z_M over the full scored set
    LogisticFit logistic_za;
    LogisticFit logistic_zu;
    FTestResult f_test_zm_za;
    double spearman_zm_za = 0.0;
    std::vector<ScoreDescriptives> descriptives;
    SweepResult sweep;                      // BBB upper bound at 0.0 / 0.25 / 0.5
    std::vector<double> sweep_bbb_uppers;
};

// Fits the pipeline on a stratified 70% split, scores the held-out 30%, and
// reproduces the comparison battery: confusion on the hold-out, logistic
// fits of the label on each score family, variance-ratio test and rank
// correlation between the nonlinear and fixed scores, descriptives, and the
// BBB-boundary threshold sweep.
inline HoldoutEvaluation holdout_evaluate(const std::vector<RatioRecord>& records,
                                          std::uint64_t seed,
                                          const ThresholdTable& thresholds) {
    auto [train_idx, test_idx] = stratified_split(records, seed);
    if (train_idx.empty() || test_idx.empty()) {
        throw FitError("holdout: split produced an empty side");
    }

    std::vector<RatioRecord> train, test;
    train.reserve(train_idx.size());
    test.reserve(test_idx.size());
    for (auto i : train_idx) train.push_back(records[i]);
    for (auto i : test_idx) test.push_back(records[i]);

    HoldoutEvaluation ev;
    ev.trained = run_pipeline(train, std::nullopt, thresholds);
    ev.test_scored = score_new(test, ev.trained.model, ev.trained.industry_fits, thresholds);

    std::vector<int> actual, predicted;
    for (const auto& rec : ev.test_scored) {
        actual.push_back(bankruptcy_index(*rec.input.grade));
        predicted.push_back(bankruptcy_index(rec.grade));
    }
    ev.holdout_matrix = confusion(actual, predicted);

    // full-set scores for the comparison battery
    auto full_scored = score_new(records, ev.trained.model, ev.trained.industry_fits, thresholds);
    std::vector<double> zm, za, zu;
    std::vector<int> labels;
    for (const auto& rec : full_scored) {
        zm.push_back(rec.z_m);
        za.push_back(z_score(ZScoreVariant::altman(), rec.input.ratios));
        zu.push_back(z_score(ZScoreVariant::updated(), rec.input.ratios));
        labels.push_back(bankruptcy_index(*rec.input.grade));
    }
    ev.logistic_zm = fit_logistic(zm, labels);
    ev.logistic_za = fit_logistic(za, labels);
    ev.logistic_zu = fit_logistic(zu, labels);
    ev.f_test_zm_za = f_test_variance(zm, za);
    ev.spearman_zm_za = spearman_rho(zm, za);
    ev.descriptives = compare_scores_table(full_scored);

    ev.sweep_bbb_uppers = {0.0, 0.25, 0.5};
    std::vector<ThresholdTable> variants;
    for (double upper : ev.sweep_bbb_uppers) {
        variants.push_back(thresholds.with_upper(RatingGrade::BBB, upper));
    }
    ev.sweep = threshold_sweep(full_scored, variants);
    return ev;
}

}  // namespace zrating
