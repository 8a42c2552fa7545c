#pragma once

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "zrating/errors.hpp"
#include "zrating/types.hpp"

namespace zrating {

// Signed log transform for financial ratios:
//
//   f(x) = ln(x + 1)    for x > 0
//   f(x) = -ln(-x + 1)  for x <= 0
//
// Odd, strictly increasing, defined for every finite real (the x <= 0 branch
// never reaches the log singularity), and magnitude-compressing: |f(x)| <= |x|.
inline double signed_log(double x) {
    if (!std::isfinite(x)) {
        throw DomainError("signed_log: input is not finite");
    }
    return x > 0.0 ? std::log1p(x) : -std::log1p(-x);
}

// Binary bankruptcy index over the grade scale: BBB and below collapse to 1
// (bankruptcy / high risk), A and above to 0 (high safety).
inline int bankruptcy_index(RatingGrade grade) {
    return grade <= RatingGrade::BBB ? 1 : 0;
}

inline TransformedRecord transform_record(const RatioRecord& record) {
    TransformedRecord out;
    out.values.reserve(record.ratios.size());
    for (std::size_t k = 0; k < record.ratios.size(); ++k) {
        const double x = record.ratios[k];
        if (!std::isfinite(x)) {
            throw DomainError("transform: non-finite ratio in column " + std::to_string(k + 1));
        }
        out.values.push_back(signed_log(x));
    }
    if (record.grade) out.bankruptcy = bankruptcy_index(*record.grade);
    out.industry = record.industry;
    out.year = record.year;
    return out;
}

// Transforms a whole dataset, addressing errors by record number.
inline std::vector<TransformedRecord> transform_dataset(const std::vector<RatioRecord>& records) {
    std::vector<TransformedRecord> out;
    out.reserve(records.size());
    for (std::size_t i = 0; i < records.size(); ++i) {
        try {
            out.push_back(transform_record(records[i]));
        } catch (const DomainError& e) {
            throw DomainError("record " + std::to_string(i + 1) + ": " + e.what());
        }
    }
    return out;
}

// Sample skewness and kurtosis from central moments:
//   skewness = m3 / m2^(3/2),  kurtosis = m4 / m2^2 (raw, not excess;
//   a normal sample gives kurtosis near 3).
inline std::pair<double, double> moment_stats(const std::vector<double>& values) {
    const std::size_t n = values.size();
    if (n < 4) {
        throw InsufficientSampleError("moment_stats: need at least 4 values, got " +
                                      std::to_string(n));
    }
    double mean = 0.0;
    for (double v : values) {
        if (!std::isfinite(v)) throw DomainError("moment_stats: non-finite value");
        mean += v;
    }
    mean /= static_cast<double>(n);

    double m2 = 0.0, m3 = 0.0, m4 = 0.0;
    for (double v : values) {
        const double d = v - mean;
        const double d2 = d * d;
        m2 += d2;
        m3 += d2 * d;
        m4 += d2 * d2;
    }
    m2 /= static_cast<double>(n);
    m3 /= static_cast<double>(n);
    m4 /= static_cast<double>(n);

    if (m2 <= 0.0) {
        throw DegenerateSampleError("moment_stats: zero variance (degenerate distribution)");
    }
    return {m3 / (m2 * std::sqrt(m2)), m4 / (m2 * m2)};
}

}  // namespace zrating
