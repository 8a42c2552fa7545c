#pragma once

#include <algorithm>
#include <cctype>
#include <optional>
#include <string>
#include <vector>

#include "zrating/errors.hpp"

namespace zrating {

// Seven-grade rating scale, ordered by increasing safety.
// CCC = very high risk ... AAA = highest safety, so the natural integer
// order of the enum is the safety order.
enum class RatingGrade : int {
    CCC = 0,
    B = 1,
    BB = 2,
    BBB = 3,
    A = 4,
    AA = 5,
    AAA = 6,
};

inline constexpr int kGradeCount = 7;

inline const char* to_string(RatingGrade g) {
    switch (g) {
        case RatingGrade::CCC: return "CCC";
        case RatingGrade::B: return "B";
        case RatingGrade::BB: return "BB";
        case RatingGrade::BBB: return "BBB";
        case RatingGrade::A: return "A";
        case RatingGrade::AA: return "AA";
        case RatingGrade::AAA: return "AAA";
    }
    return "?";
}

// Case-insensitive grade parse; returns nullopt for unknown text.
inline std::optional<RatingGrade> parse_grade(std::string text) {
    std::transform(text.begin(), text.end(), text.begin(),
                   [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
    if (text == "CCC") return RatingGrade::CCC;
    if (text == "B") return RatingGrade::B;
    if (text == "BB") return RatingGrade::BB;
    if (text == "BBB") return RatingGrade::BBB;
    if (text == "A") return RatingGrade::A;
    if (text == "AA") return RatingGrade::AA;
    if (text == "AAA") return RatingGrade::AAA;
    return std::nullopt;
}

// One firm-year observation: t financial ratios plus categorical labels.
// The agency grade is optional: records that are only scored (never fitted)
// may omit it.
struct RatioRecord {
    std::vector<double> ratios;
    int industry = 0;
    int year = 0;
    std::optional<RatingGrade> grade;
};

// A record after the signed-log transform. The bankruptcy index is present
// exactly when the source record carried a grade.
struct TransformedRecord {
    std::vector<double> values;
    std::optional<int> bankruptcy;
    int industry = 0;
    int year = 0;
};

}  // namespace zrating
