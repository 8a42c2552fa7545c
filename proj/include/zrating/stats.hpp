#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include "zrating/errors.hpp"

namespace zrating {
namespace detail {

inline double mean(const std::vector<double>& x) {
    double s = 0.0;
    for (double v : x) s += v;
    return s / static_cast<double>(x.size());
}

// Unbiased (n-1) sample variance.
inline double sample_variance(const std::vector<double>& x) {
    const std::size_t n = x.size();
    if (n < 2) throw InsufficientSampleError("sample_variance: need n >= 2");
    const double m = mean(x);
    double s = 0.0;
    for (double v : x) s += (v - m) * (v - m);
    return s / static_cast<double>(n - 1);
}

// Regularized incomplete beta I_x(a, b) via Lentz continued fraction.
inline double beta_inc(double a, double b, double x) {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;

    const bool flip = x > (a + 1.0) / (a + b + 2.0);
    if (flip) {
        std::swap(a, b);
        x = 1.0 - x;
    }

    constexpr double tiny = 1e-30;
    constexpr double eps = 1e-14;
    constexpr int max_iter = 500;

    const double log_front = a * std::log(x) + b * std::log(1.0 - x) -
                             std::log(a) -
                             (std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b));

    double c = 1.0;
    double d = 1.0 - (a + b) * x / (a + 1.0);
    if (std::fabs(d) < tiny) d = tiny;
    d = 1.0 / d;
    double h = d;

    for (int m = 1; m <= max_iter; ++m) {
        const double m2 = 2.0 * m;
        double aa = m * (b - m) * x / ((a + m2 - 1.0) * (a + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < tiny) d = tiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        h *= d * c;

        aa = -(a + m) * (a + b + m) * x / ((a + m2) * (a + m2 + 1.0));
        d = 1.0 + aa * d;
        if (std::fabs(d) < tiny) d = tiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < eps) break;
    }

    const double result = std::exp(log_front) * h;
    return flip ? 1.0 - result : result;
}

// Upper-tail probability P(F_{df1, df2} > f).
inline double f_upper_tail(double f, double df1, double df2) {
    if (f <= 0.0) return 1.0;
    return beta_inc(df2 / 2.0, df1 / 2.0, df2 / (df2 + df1 * f));
}

// Upper critical value of the F distribution: smallest f with upper tail p.
inline double f_upper_critical(double p, double df1, double df2) {
    double lo = 0.0, hi = 1.0;
    while (f_upper_tail(hi, df1, df2) > p) hi *= 2.0;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (f_upper_tail(mid, df1, df2) > p) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

// Linear-interpolation quantile between order statistics, h = (n-1)p.
inline double quantile_sorted(const std::vector<double>& sorted, double p) {
    const std::size_t n = sorted.size();
    if (n == 0) throw InsufficientSampleError("quantile: empty sample");
    if (n == 1) return sorted[0];
    const double h = static_cast<double>(n - 1) * p;
    const auto lo = static_cast<std::size_t>(std::floor(h));
    if (lo + 1 >= n) return sorted[n - 1];
    const double w = h - static_cast<double>(lo);
    return sorted[lo] + w * (sorted[lo + 1] - sorted[lo]);
}

inline double quantile(std::vector<double> values, double p) {
    std::sort(values.begin(), values.end());
    return quantile_sorted(values, p);
}

}  // namespace detail
}  // namespace zrating
