#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "zrating/errors.hpp"
#include "zrating/transform.hpp"
#include "zrating/types.hpp"

namespace zrating {

// Scaling convention applied to the raw discriminant direction: scores have
// unit pooled within-class variance, and the non-bankrupt (b = 0) class mean
// score is the higher one, so larger scores mean more safety.
inline constexpr const char* kNormalizationSafeHigh = "pooled_unit_variance_safe_high";

// Fitted two-group discriminant: weight vector for the transformed ratios
// plus the fit diagnostics (class means, pooled scatter, scaling tag).
struct DiscriminantModel {
    std::vector<double> weights;
    std::vector<double> mean_bankrupt;      // class-conditional mean, b = 1
    std::vector<double> mean_safe;          // class-conditional mean, b = 0
    std::vector<std::vector<double>> pooled_scatter;
    std::string normalization = kNormalizationSafeHigh;

    std::size_t dimension() const { return weights.size(); }
};

namespace detail {

// Solves A x = b for symmetric positive-definite A via Cholesky.
// Returns false when A is not positive definite.
inline bool spd_solve(std::vector<std::vector<double>> a, std::vector<double> b,
                      std::vector<double>& x) {
    const std::size_t n = a.size();
    // in-place LL^T
    for (std::size_t j = 0; j < n; ++j) {
        double d = a[j][j];
        for (std::size_t k = 0; k < j; ++k) d -= a[j][k] * a[j][k];
        if (!(d > 0.0)) return false;
        a[j][j] = std::sqrt(d);
        for (std::size_t i = j + 1; i < n; ++i) {
            double s = a[i][j];
            for (std::size_t k = 0; k < j; ++k) s -= a[i][k] * a[j][k];
            a[i][j] = s / a[j][j];
        }
    }
    // forward then backward substitution
    for (std::size_t i = 0; i < n; ++i) {
        double s = b[i];
        for (std::size_t k = 0; k < i; ++k) s -= a[i][k] * b[k];
        b[i] = s / a[i][i];
    }
    x.assign(n, 0.0);
    for (std::size_t ii = n; ii-- > 0;) {
        double s = b[ii];
        for (std::size_t k = ii + 1; k < n; ++k) s -= a[k][ii] * x[k];
        x[ii] = s / a[ii][ii];
    }
    return true;
}

}  // namespace detail

// Two-group Fisher linear discriminant of the bankruptcy index on the
// transformed ratios: direction w proportional to S_pooled^-1 (mu0 - mu1),
// where S_pooled is the pooled within-class covariance with a small ridge
// (1e-8 * trace/t) added before the solve. The direction is rescaled so the
// pooled within-class variance of the scores is one; the safe class then has
// the higher mean score (see kNormalizationSafeHigh). Deterministic for any
// permutation of the input rows.
inline DiscriminantModel fit_mda(const std::vector<TransformedRecord>& records) {
    if (records.empty()) throw FitError("fit_mda: empty dataset");
    const std::size_t t = records.front().values.size();
    if (t == 0) throw FitError("fit_mda: zero-dimensional records");

    std::size_t n0 = 0, n1 = 0;
    std::vector<double> mu0(t, 0.0), mu1(t, 0.0);
    for (std::size_t i = 0; i < records.size(); ++i) {
        const auto& r = records[i];
        if (r.values.size() != t) {
            throw DimensionError("fit_mda: record " + std::to_string(i + 1) +
                                 " has mismatched width");
        }
        if (!r.bankruptcy) {
            throw SchemaError("fit_mda: record " + std::to_string(i + 1) +
                              " is ungraded; fitting requires labels on every record");
        }
        if (*r.bankruptcy == 1) {
            ++n1;
            for (std::size_t k = 0; k < t; ++k) mu1[k] += r.values[k];
        } else {
            ++n0;
            for (std::size_t k = 0; k < t; ++k) mu0[k] += r.values[k];
        }
    }
    if (n0 == 0 || n1 == 0) {
        throw FitError("fit_mda: both classes required, got " + std::to_string(n1) +
                       " bankrupt and " + std::to_string(n0) + " non-bankrupt records");
    }
    if (n0 < 2 || n1 < 2) {
        throw FitError("fit_mda: need at least 2 records per class");
    }
    for (std::size_t k = 0; k < t; ++k) {
        mu0[k] /= static_cast<double>(n0);
        mu1[k] /= static_cast<double>(n1);
    }

    // pooled within-class covariance, n - 2 degrees of freedom
    std::vector<std::vector<double>> scatter(t, std::vector<double>(t, 0.0));
    for (const auto& r : records) {
        const auto& mu = *r.bankruptcy == 1 ? mu1 : mu0;
        for (std::size_t a = 0; a < t; ++a) {
            const double da = r.values[a] - mu[a];
            for (std::size_t b = 0; b < t; ++b) {
                scatter[a][b] += da * (r.values[b] - mu[b]);
            }
        }
    }
    const double dof = static_cast<double>(n0 + n1 - 2);
    for (auto& row : scatter) {
        for (auto& v : row) v /= dof;
    }

    double trace = 0.0;
    for (std::size_t k = 0; k < t; ++k) trace += scatter[k][k];
    const double ridge = 1e-8 * trace / static_cast<double>(t);

    auto regularized = scatter;
    for (std::size_t k = 0; k < t; ++k) regularized[k][k] += ridge;

    std::vector<double> diff(t);
    for (std::size_t k = 0; k < t; ++k) diff[k] = mu0[k] - mu1[k];

    std::vector<double> w;
    if (!detail::spd_solve(regularized, diff, w)) {
        std::string cols;
        for (std::size_t k = 0; k < t; ++k) {
            if (scatter[k][k] <= ridge) cols += (cols.empty() ? "" : ", ") + std::to_string(k + 1);
        }
        throw NumericalError("fit_mda: pooled scatter is singular beyond regularization" +
                             (cols.empty() ? std::string()
                                           : " (degenerate columns: " + cols + ")"));
    }

    // scale scores to unit pooled within-class variance
    double w_s_w = 0.0;
    for (std::size_t a = 0; a < t; ++a) {
        for (std::size_t b = 0; b < t; ++b) w_s_w += w[a] * scatter[a][b] * w[b];
    }
    if (!(w_s_w > 0.0)) {
        throw NumericalError("fit_mda: discriminant direction has zero within-class variance");
    }
    const double scale = 1.0 / std::sqrt(w_s_w);
    for (auto& v : w) v *= scale;

    DiscriminantModel model;
    model.weights = std::move(w);
    model.mean_bankrupt = std::move(mu1);
    model.mean_safe = std::move(mu0);
    model.pooled_scatter = std::move(scatter);
    return model;
}

// Score of one record under a fitted model: dot product of the weights with
// the transformed ratios. Pass already_transformed = false to apply the
// signed-log transform internally.
inline double z_score(const DiscriminantModel& model, const std::vector<double>& values,
                      bool already_transformed = true) {
    if (values.size() != model.weights.size()) {
        throw DimensionError("z_score: expected " + std::to_string(model.weights.size()) +
                             " values, got " + std::to_string(values.size()));
    }
    double z = 0.0;
    for (std::size_t k = 0; k < values.size(); ++k) {
        z += model.weights[k] * (already_transformed ? values[k] : signed_log(values[k]));
    }
    return z;
}

// -- fixed-weight score variants (applied to RAW ratios)

enum class ZKind { altman, updated, nonlinear_m };

inline constexpr std::array<double, 5> kAltmanWeights = {1.2, 1.4, 3.3, 0.6, 0.999};
inline constexpr std::array<double, 5> kUpdatedWeights = {0.72, 0.85, 3.1, 0.42, 1.0};

// One of the three score families: the two fixed five-ratio classics, or the
// nonlinear variant whose weights come from a fitted DiscriminantModel.
struct ZScoreVariant {
    ZKind kind = ZKind::nonlinear_m;
    std::optional<std::array<double, 5>> fixed_weights;

    static ZScoreVariant altman() { return {ZKind::altman, kAltmanWeights}; }
    static ZScoreVariant updated() { return {ZKind::updated, kUpdatedWeights}; }
    static ZScoreVariant nonlinear() { return {ZKind::nonlinear_m, std::nullopt}; }
};

// Fixed-weight variants score raw ratios; the nonlinear variant requires a
// model and scores the signed-log transform of the ratios.
inline double z_score(const ZScoreVariant& variant, const std::vector<double>& raw_ratios,
                      const DiscriminantModel* model = nullptr) {
    if (variant.kind == ZKind::nonlinear_m) {
        if (model == nullptr) throw ConfigError("z_score: nonlinear variant requires a model");
        return z_score(*model, raw_ratios, /*already_transformed=*/false);
    }
    const auto& w = *variant.fixed_weights;
    if (raw_ratios.size() != w.size()) {
        throw DimensionError("z_score: fixed-weight variant expects " +
                             std::to_string(w.size()) + " ratios, got " +
                             std::to_string(raw_ratios.size()));
    }
    double z = 0.0;
    for (std::size_t k = 0; k < w.size(); ++k) z += w[k] * raw_ratios[k];
    return z;
}

enum class AltmanZone { safe, grey, distress };

inline AltmanZone altman_zone(double z) {
    if (!std::isfinite(z)) throw DomainError("altman_zone: non-finite score");
    if (z >= 2.99) return AltmanZone::safe;
    if (z >= 1.81) return AltmanZone::grey;
    return AltmanZone::distress;
}

inline const char* to_string(AltmanZone zone) {
    switch (zone) {
        case AltmanZone::safe: return "Safe";
        case AltmanZone::grey: return "Grey";
        case AltmanZone::distress: return "Distress";
    }
    return "?";
}

}  // namespace zrating
