#pragma once

#include <array>
#include <cmath>
#include <limits>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "zrating/errors.hpp"
#include "zrating/lmoments.hpp"
#include "zrating/types.hpp"

namespace zrating {

// Pearson type 3 parameters in the scale convention: the distribution is a
// shifted gamma c + alpha * Gamma(eta, 1), so mean = c + alpha*eta and
// variance = alpha^2 * eta. `mirrored` marks a fit obtained on the negated
// sample (negative L-skewness); c/alpha/eta then describe -X.
struct P3Params {
    double location_c = 0.0;
    double scale_alpha = 1.0;
    double shape_eta = 1.0;
    bool mirrored = false;
};

inline constexpr double kTau3SymmetryFloor = 1e-6;

// Shape parameter from the absolute L-skewness via the two rational
// minimax approximations, split at t3 = 1/3.
inline double p3_shape_from_tau3(double t3) {
    if (t3 < 1.0 / 3.0) {
        const double d = 3.0 * M_PI * t3 * t3;
        return (1.0 + 0.2906 * d) / (d + 0.1882 * d * d + 0.0442 * d * d * d);
    }
    const double z = 1.0 - t3;
    return (0.36067 * z - 0.5967 * z * z + 0.2536 * z * z * z) /
           (1.0 - 2.78861 * z + 2.56096 * z * z - 0.77045 * z * z * z);
}

// L-moment fit of the P3 parameters:
//   eta   from |tau3| (branch split at 1/3)
//   alpha = sqrt(pi) * theta2 * Gamma(eta) / Gamma(eta + 1/2)
//   c     = theta1 - alpha * eta
// The gamma ratio is evaluated through log-gamma for stability. Negative
// tau3 is handled by fitting the negated sample and flagging the result as
// mirrored; |tau3| below the symmetry floor is rejected (shape diverges).
inline P3Params fit_p3(const LMomentSet& lmom) {
    if (lmom.theta2 <= 0.0) {
        throw DegenerateSampleError("fit_p3: nonpositive L-scale");
    }
    const double t3 = std::fabs(lmom.tau3);
    if (t3 < kTau3SymmetryFloor) {
        throw DegenerateSampleError("fit_p3: sample is symmetric (|tau3| < 1e-6), shape diverges");
    }
    if (t3 >= 1.0) {
        throw NumericalError("fit_p3: |tau3| must be < 1, got " + std::to_string(lmom.tau3));
    }

    P3Params p;
    p.mirrored = lmom.tau3 < 0.0;
    p.shape_eta = p3_shape_from_tau3(t3);
    p.scale_alpha = std::sqrt(M_PI) * lmom.theta2 *
                    std::exp(std::lgamma(p.shape_eta) - std::lgamma(p.shape_eta + 0.5));
    const double theta1 = p.mirrored ? -lmom.theta1 : lmom.theta1;
    p.location_c = theta1 - p.scale_alpha * p.shape_eta;
    return p;
}

// Density of the fitted distribution at xi. Zero outside the support
// [c, +inf) (mirrored: (-inf, -c'] in original coordinates).
inline double p3_pdf(const P3Params& p, double xi) {
    const double x = p.mirrored ? -xi : xi;
    const double u = (x - p.location_c) / p.scale_alpha;
    if (u < 0.0) return 0.0;
    if (u == 0.0) {
        if (p.shape_eta > 1.0) return 0.0;
        if (p.shape_eta == 1.0) return 1.0 / p.scale_alpha;
        return std::numeric_limits<double>::infinity();
    }
    const double log_g = (p.shape_eta - 1.0) * std::log(u) - u -
                         std::lgamma(p.shape_eta) - std::log(p.scale_alpha);
    return std::exp(log_g);
}

// Draws n values from the distribution (shifted, scaled gamma).
template <typename Rng>
inline std::vector<double> p3_sample(const P3Params& p, std::size_t n, Rng& rng) {
    std::gamma_distribution<double> gamma(p.shape_eta, 1.0);
    std::vector<double> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double x = p.location_c + p.scale_alpha * gamma(rng);
        out.push_back(p.mirrored ? -x : x);
    }
    return out;
}

namespace detail {

// Standardized value and index for an unmirrored fit. The cube root is the
// signed real root (values below the location bound occur when scoring new
// data against a prior fit), keeping the index real and strictly increasing.
inline std::pair<double, double> standardize_unmirrored(const P3Params& p, double z) {
    const double v = (z - p.location_c) / p.scale_alpha;
    const double eta = p.shape_eta;
    const double h = (std::cbrt(v / eta) + 1.0 / (9.0 * eta) - 1.0) * std::sqrt(9.0 * eta);
    return {v, h};
}

}  // namespace detail

// Standardized value v = (z - c)/alpha together with the equi-probability
// credit index
//   H = ((v/eta)^(1/3) + 1/(9 eta) - 1) * (9 eta)^(1/2),
// which is approximately standard normal when z follows the fitted
// distribution. Mirrored fits use H(z) = -H_mirror(-z), preserving
// monotonicity in z.
inline std::pair<double, double> credit_index_parts(const P3Params& p, double z) {
    if (!std::isfinite(z)) throw DomainError("credit_index: non-finite score");
    if (p.mirrored) {
        auto [v, h] = detail::standardize_unmirrored(p, -z);
        return {v, -h};
    }
    return detail::standardize_unmirrored(p, z);
}

inline double credit_index(const P3Params& p, double z) {
    return credit_index_parts(p, z).second;
}

// Ordered H-interval scheme mapping the credit index to the seven grades.
// boundaries[k] = inclusive upper H cutoff of grade k; the last cutoff is
// +infinity so the intervals partition the real line. A boundary point
// belongs to the lower grade.
struct ThresholdTable {
    std::array<std::pair<double, RatingGrade>, kGradeCount> boundaries;

    void validate() const {
        bool seen[kGradeCount] = {};
        for (int k = 0; k < kGradeCount; ++k) {
            const auto& [cut, grade] = boundaries[k];
            if (std::isnan(cut)) throw ConfigError("thresholds: NaN cutoff");
            if (k > 0 && !(cut > boundaries[k - 1].first)) {
                throw ConfigError("thresholds: cutoffs must be strictly increasing");
            }
            if (k > 0 && !(grade > boundaries[k - 1].second)) {
                throw ConfigError("thresholds: grades must improve with H");
            }
            seen[static_cast<int>(grade)] = true;
        }
        for (bool s : seen) {
            if (!s) throw ConfigError("thresholds: all seven grades required");
        }
        if (boundaries.back().first != std::numeric_limits<double>::infinity()) {
            throw ConfigError("thresholds: top interval must be unbounded");
        }
    }

    // Copy with one grade's upper cutoff replaced (used by sensitivity sweeps).
    ThresholdTable with_upper(RatingGrade grade, double cutoff) const {
        ThresholdTable t = *this;
        for (auto& [cut, g] : t.boundaries) {
            if (g == grade) cut = cutoff;
        }
        t.validate();
        return t;
    }
};

// Default scheme:
//   AAA: H > 2.0, AA: (1.5, 2.0], A: (0, 1.5], BBB: (-1.0, 0.0],
//   BB: (-1.5, -1.0], B: (-2.0, -1.5], CCC: H <= -2.0.
inline ThresholdTable default_thresholds() {
    ThresholdTable t;
    t.boundaries = {{
        {-2.0, RatingGrade::CCC},
        {-1.5, RatingGrade::B},
        {-1.0, RatingGrade::BB},
        {0.0, RatingGrade::BBB},
        {1.5, RatingGrade::A},
        {2.0, RatingGrade::AA},
        {std::numeric_limits<double>::infinity(), RatingGrade::AAA},
    }};
    return t;
}

inline RatingGrade assign_grade(double h, const ThresholdTable& table) {
    if (std::isnan(h)) throw DomainError("assign_grade: NaN index");
    for (const auto& [cut, grade] : table.boundaries) {
        if (h <= cut) return grade;
    }
    return table.boundaries.back().second;
}

}  // namespace zrating
