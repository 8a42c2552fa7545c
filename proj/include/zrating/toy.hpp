#pragma once

#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "zrating/pipeline.hpp"
#include "zrating/types.hpp"

namespace zrating {

// Embedded ten-record reference dataset (five ratios, one industry, years
// 1..10) together with the reference weight vector and the expected values of
// every intermediate. Serves as the executable regression anchor: the toy
// subcommand and the regression suite replay the full chain against it.

inline std::vector<RatioRecord> toy_dataset() {
    static constexpr std::array<std::array<double, 5>, 10> ratios = {{
        {0.121, 0.263, 0.046, 1.219, 0.286},
        {-0.046, -0.164, 0.027, 0.218, 0.103},
        {0.481, 0.696, 0.099, 3.969, 0.532},
        {0.351, 0.238, 0.07, 1.023, 0.237},
        {0.217, 0.326, 0.045, 2.522, 0.295},
        {0.105, 0.236, 0.053, 1.566, 0.216},
        {0.078, 0.157, 0.041, 1.402, 0.335},
        {0.189, 0.437, 0.059, 5.043, 0.452},
        {0.043, -0.047, 0.041, 0.287, 0.114},
        {0.17, 0.702, 0.089, 23.002, 1.183},
    }};
    static constexpr std::array<RatingGrade, 10> grades = {
        RatingGrade::BBB, RatingGrade::B,   RatingGrade::AAA, RatingGrade::BBB,
        RatingGrade::AA,  RatingGrade::BBB, RatingGrade::BBB, RatingGrade::AAA,
        RatingGrade::B,   RatingGrade::AAA,
    };
    std::vector<RatioRecord> out;
    out.reserve(10);
    for (int i = 0; i < 10; ++i) {
        RatioRecord rec;
        rec.ratios.assign(ratios[i].begin(), ratios[i].end());
        rec.industry = 1;
        rec.year = i + 1;
        rec.grade = grades[i];
        out.push_back(std::move(rec));
    }
    return out;
}

// Reference weight vector used with the toy dataset. Injected, not fitted:
// the chain downstream of the weights is what the check exercises.
inline DiscriminantModel toy_reference_model() {
    DiscriminantModel m;
    m.weights = {1.841, -0.856, -1.087, 3.390, -1.649};
    m.normalization = "external";
    return m;
}

// Expected values. Most reference numbers are printed to three decimals and
// are consistent with the full-precision chain. The reference table's theta3
// and tau3 are the exception: they were printed from three-decimal beta
// arithmetic (6*1.939 - 6*2.449 + 3.461 = 0.401) and disagree with the
// chain's own delta anchor, since delta = 3*pi*tau3^2 = 0.7202 forces
// tau3 = 0.27642, not 0.279. Such entries carry display_only = true and an
// additional chain-consistent expectation is checked in their place.
struct ToyExpectations {
    std::array<std::array<double, 5>, 10> transformed;
    std::array<int, 10> bankruptcy;
    std::array<double, 10> z_m;
    double beta0, beta1, beta2;
    double theta1, theta2;
    double theta3_display, theta3_chain;
    double tau2;
    double tau3_display, tau3_chain;
    double delta, eta, alpha, c;
    double v11, h11;
    std::array<double, 9> h_rest;  // records 2..10
    std::array<RatingGrade, 10> grades;
};

inline const ToyExpectations& toy_expectations() {
    static const ToyExpectations e = {
        // transformed set D
        {{
            {0.114, 0.233, 0.045, 0.797, 0.252},
            {-0.045, -0.152, 0.027, 0.197, 0.098},
            {0.393, 0.528, 0.094, 1.603, 0.427},
            {0.301, 0.213, 0.068, 0.705, 0.213},
            {0.196, 0.282, 0.044, 1.259, 0.259},
            {0.100, 0.212, 0.052, 0.942, 0.196},
            {0.075, 0.146, 0.040, 0.876, 0.289},
            {0.173, 0.363, 0.057, 1.799, 0.373},
            {0.042, -0.046, 0.040, 0.252, 0.108},
            {0.157, 0.532, 0.085, 3.178, 0.781},
        }},
        {1, 1, 0, 1, 0, 1, 1, 0, 1, 0},
        {2.249, 0.525, 4.900, 2.335, 3.914, 2.818, 2.464, 5.429, 0.750, 9.228},
        3.461, 2.449, 1.939,
        3.461, 1.437,
        0.401,    // theta3 as printed (rounded-beta arithmetic)
        0.39722,  // theta3 consistent with the delta anchor (tau3_chain * theta2)
        0.415,
        0.279,    // tau3 as printed (0.401 / 1.437)
        0.27642,  // tau3 forced by delta = 3*pi*tau3^2 = 0.7202
        0.7202, 1.449, 2.3042, 0.121,
        0.9232, -0.2272,
        {-1.549, 0.735, -0.186, 0.433, 0.028, -0.126, 0.880, -1.265, 1.711},
        {RatingGrade::BBB, RatingGrade::B, RatingGrade::A, RatingGrade::BBB, RatingGrade::A,
         RatingGrade::A, RatingGrade::BBB, RatingGrade::A, RatingGrade::BB, RatingGrade::AA},
    };
    return e;
}

// One golden-check line. display_only marks the two reference-table entries
// whose printed values are rounding artifacts; they are reported but do not
// gate the chain verdict.
struct ToyCheck {
    std::string name;
    double expected = 0.0;
    double actual = 0.0;
    double tolerance = 0.0;
    bool pass = false;
    bool display_only = false;
};

struct ToyCheckResult {
    std::vector<ToyCheck> checks;
    PipelineResult pipeline;
    LMomentSet lmoments;
    bool chain_pass = true;  // all non-display checks pass
};

// Replays the full chain on the embedded dataset with the reference weights
// and compares every intermediate against its expectation.
inline ToyCheckResult run_toy_check() {
    const auto& exp = toy_expectations();
    ToyCheckResult result;
    result.pipeline = run_pipeline(toy_dataset(), toy_reference_model(), default_thresholds());
    const auto& recs = result.pipeline.records;

    const auto add = [&](const std::string& name, double expected, double actual,
                         double tolerance, bool display_only = false) {
        ToyCheck c{name, expected, actual, tolerance, false, display_only};
        c.pass = std::fabs(actual - expected) <= tolerance;
        if (!display_only && !c.pass) result.chain_pass = false;
        result.checks.push_back(std::move(c));
    };

    for (int i = 0; i < 10; ++i) {
        for (int k = 0; k < 5; ++k) {
            add("f(x)[" + std::to_string(i + 1) + "," + std::to_string(k + 1) + "]",
                exp.transformed[i][k], recs[i].transformed.values[k], 5e-4);
        }
    }
    for (int i = 0; i < 10; ++i) {
        add("b[" + std::to_string(i + 1) + "]", exp.bankruptcy[i],
            static_cast<double>(*recs[i].transformed.bankruptcy), 0.0);
    }
    for (int i = 0; i < 10; ++i) {
        add("Z_M[" + std::to_string(i + 1) + "]", exp.z_m[i], recs[i].z_m, 2e-3);
    }

    std::vector<double> scores;
    for (const auto& r : recs) scores.push_back(r.z_m);
    result.lmoments = l_moments(scores);
    const auto& lm = result.lmoments;
    add("beta0", exp.beta0, lm.beta0, 2e-3);
    add("beta1", exp.beta1, lm.beta1, 2e-3);
    add("beta2", exp.beta2, lm.beta2, 2e-3);
    add("theta1", exp.theta1, lm.theta1, 2e-3);
    add("theta2", exp.theta2, lm.theta2, 2e-3);
    add("theta3", exp.theta3_chain, lm.theta3, 2e-3);
    add("theta3(printed)", exp.theta3_display, lm.theta3, 2e-3, true);
    add("tau2", exp.tau2, lm.tau2, 2e-3);
    add("tau3", exp.tau3_chain, lm.tau3, 2e-3);
    add("tau3(printed)", exp.tau3_display, lm.tau3, 2e-3, true);

    const double t3 = std::fabs(lm.tau3);
    add("delta", exp.delta, 3.0 * M_PI * t3 * t3, 3e-3);
    const auto& fit = result.pipeline.industry_fits.at(1);
    add("eta", exp.eta, fit.shape_eta, 3e-3);
    add("alpha", exp.alpha, fit.scale_alpha, 3e-3);
    add("c", exp.c, fit.location_c, 3e-3);

    add("v[1]", exp.v11, recs[0].v, 3e-3);
    add("H[1]", exp.h11, recs[0].h, 3e-3);
    for (int i = 1; i < 10; ++i) {
        add("H[" + std::to_string(i + 1) + "]", exp.h_rest[i - 1], recs[i].h, 5e-3);
    }
    for (int i = 0; i < 10; ++i) {
        add("W[" + std::to_string(i + 1) + "]=" + to_string(exp.grades[i]),
            static_cast<double>(exp.grades[i]), static_cast<double>(recs[i].grade), 0.0);
    }
    return result;
}

}  // namespace zrating
