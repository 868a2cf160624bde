#pragma once

#include <array>
#include <cstdint>

#include "ae/model.hpp"
#include "ae/numeric.hpp"

// Frozen reference data shared by the test suites. The 20000-item dataset is
// the worked example whose by-true-label split, both baseline partitions, and
// both evaluations are known in closed form.
namespace fixtures {

using ae::GroundTruthCounts;
using ae::PatternCounts;
using ae::Rational;
using ae::RationalPoint;

inline PatternCounts reference_counts() {
    return PatternCounts::from_canonical({568, 553, 649, 1813, 3534, 3607, 1068, 8208});
}

inline GroundTruthCounts reference_truth() {
    GroundTruthCounts truth;
    const std::array<std::uint64_t, 8> a = {424, 168, 283, 415, 252, 194, 129, 135};
    const std::array<std::uint64_t, 8> b = {144, 385, 366, 1398, 3282, 3413, 939, 8073};
    const auto canonical = ae::DecisionPattern::canonical();
    for (int i = 0; i < 8; ++i) {
        truth.cell(ae::Label::a, canonical[i]) = a[i];
        truth.cell(ae::Label::b, canonical[i]) = b[i];
    }
    return truth;
}

// The algebraic estimate of the reference partition, after display rounding.
inline std::array<std::array<std::int64_t, 2>, 8> reference_ae_cells() {
    return {{{399, 169},
             {133, 420},
             {253, 396},
             {416, 1397},
             {264, 3270},
             {139, 3468},
             {84, 984},
             {88, 8120}}};
}

// Selected prevalence root and per-slot accuracies for the reference counts.
inline const char* reference_root_digits() {
    return "0.08874525012607617256640896756722176511789173278758187499";
}

inline std::array<std::array<const char*, 2>, 3> reference_accuracy_digits() {
    return {{{"0.489310574191686246556037922103", "0.891933610532455991582373731204"},
             {"0.61202121200679947361480904686", "0.700702767809192175328303957362"},
             {"0.750218808377041554808681935308", "0.712899554995472822216960951094"}}};
}

inline RationalPoint roundtrip_point() {
    RationalPoint point;
    point.p_a = Rational(3, 10);
    point.pi = {{{Rational(7, 10), Rational(8, 10)},
                 {Rational(6, 10), Rational(7, 10)},
                 {Rational(8, 10), Rational(9, 10)}}};
    return point;
}

// Same accuracies at prevalence 1/2: the trio moment vanishes and the
// prevalence quadratic collapses to a double root.
inline RationalPoint double_root_point() {
    RationalPoint point = roundtrip_point();
    point.p_a = Rational(1, 2);
    return point;
}

inline PatternCounts double_root_counts() {
    return PatternCounts::from_canonical({171, 69, 119, 84, 76, 126, 91, 264});
}

// Exact expected counts of a pair-coupled trio (shared-draw weight 1/2 on the
// first pair), q = 10000; the per-label error covariances are 9/100 and 7/100.
inline RationalPoint correlated_point() {
    RationalPoint point;
    point.p_a = Rational(2, 5);
    point.pi = {{{Rational(7, 10), Rational(8, 10)},
                 {Rational(6, 10), Rational(7, 10)},
                 {Rational(8, 10), Rational(3, 4)}}};
    return point;
}

inline PatternCounts correlated_counts() {
    return PatternCounts::from_canonical({1827, 993, 713, 543, 1617, 837, 467, 3003});
}

// Rational roots {2/5, 3/5} whose accuracy solutions leave [0,1].
inline PatternCounts out_of_range_counts() {
    return PatternCounts::from_canonical({552, 333, 518, 48, 182, 117, 447, 303});
}

// Negative quadratic leading coefficient: complex prevalence pair.
inline PatternCounts complex_counts() {
    return PatternCounts::from_canonical({220, 223, 224, 221, 73, 266, 344, 225});
}

}  // namespace fixtures
