#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "zrating/errors.hpp"

namespace zrating {

// Sample probability-weighted moments and the first three L-moments of a
// score sample, with the L-moment ratios used by the distribution fit.
struct LMomentSet {
    double beta0 = 0.0;
    double beta1 = 0.0;
    double beta2 = 0.0;
    double theta1 = 0.0;  // L-mean (equals the sample mean)
    double theta2 = 0.0;  // L-scale, nonnegative
    double theta3 = 0.0;
    double tau2 = 0.0;  // L-CV, theta2 / theta1 (NaN when theta1 == 0)
    double tau3 = 0.0;  // L-skewness, theta3 / theta2
    std::size_t n = 0;
};

// Unbiased order-statistic PWM estimator of order r in {0, 1, 2}:
// with x_(1) <= ... <= x_(n),
//   beta_r = (1/n) * sum_i x_(i) * [(i-1)(i-2)...(i-r)] / [(n-1)(n-2)...(n-r)]
// beta_0 is the sample mean. Input order is irrelevant; sorting is internal
// (stable under ties, which need no special handling).
inline double sample_pwm(std::vector<double> values, int r) {
    const std::size_t n = values.size();
    if (r < 0 || r > 2) throw NumericalError("sample_pwm: order must be 0, 1 or 2");
    if (n <= static_cast<std::size_t>(r)) {
        throw InsufficientSampleError("sample_pwm: need n > r, got n = " + std::to_string(n) +
                                      ", r = " + std::to_string(r));
    }
    for (double v : values) {
        if (!std::isfinite(v)) throw DomainError("sample_pwm: non-finite value");
    }
    std::sort(values.begin(), values.end());

    double sum = 0.0;
    for (std::size_t i = 1; i <= n; ++i) {
        double w = 1.0;
        for (int k = 1; k <= r; ++k) {
            w *= static_cast<double>(i - k) / static_cast<double>(n - k);
        }
        sum += w * values[i - 1];
    }
    return sum / static_cast<double>(n);
}

// First three L-moments from the PWMs:
//   theta1 = beta0, theta2 = 2*beta1 - beta0, theta3 = 6*beta2 - 6*beta1 + beta0
// The sample must have spread: all-equal values give theta2 = 0 and no
// distribution can be fitted to them.
inline LMomentSet l_moments(const std::vector<double>& values) {
    if (values.size() < 3) {
        throw InsufficientSampleError("l_moments: need n >= 3, got " +
                                      std::to_string(values.size()));
    }
    LMomentSet out;
    out.n = values.size();
    out.beta0 = sample_pwm(values, 0);
    out.beta1 = sample_pwm(values, 1);
    out.beta2 = sample_pwm(values, 2);
    out.theta1 = out.beta0;
    out.theta2 = 2.0 * out.beta1 - out.beta0;
    out.theta3 = 6.0 * out.beta2 - 6.0 * out.beta1 + out.beta0;
    if (out.theta2 <= 0.0) {
        throw DegenerateSampleError("l_moments: zero L-scale (all values equal)");
    }
    out.tau2 = out.theta1 != 0.0 ? out.theta2 / out.theta1
                                 : std::numeric_limits<double>::quiet_NaN();
    out.tau3 = out.theta3 / out.theta2;
    return out;
}

}  // namespace zrating
