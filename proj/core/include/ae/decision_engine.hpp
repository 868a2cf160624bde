#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ae/ae_solver.hpp"
#include "ae/model.hpp"
#include "ae/mv_baseline.hpp"
#include "ae/numeric.hpp"
#include "ae/synthesis.hpp"

namespace ae {

// By-true-label estimate for observed counts: the b cell comes from the model,
// cell_b = q * p_b * prod(pi_b terms), and the a cell is the complement of the
// OBSERVED count (the integer-partition identity), cell_a = observed - cell_b.
// Rows therefore sum to the observed counts exactly; a cells can go negative
// when the model overshoots, which is flagged rather than clamped.
template <class S>
struct PartitionEstimate {
    ByTrueLabelCounts<S> cells;
    PatternCounts observed;
    bool clamped = false;         // input point was clamped into [0,1]
    bool negative_cells = false;  // some complement cell went negative
};

template <class S>
PartitionEstimate<S> estimate_partition(EvaluationPoint<S> point, const PatternCounts& counts);

// Display rounding: round the model (b) cell half away from zero, then take the
// a cell as observed minus the rounded b cell, so each row sums to its observed count.
ByTrueLabelCounts<std::int64_t> rounded_partition(const PartitionEstimate<Rational>& estimate);
ByTrueLabelCounts<std::int64_t> rounded_partition(const PartitionEstimate<BigFloat>& estimate);

// Argmax over the pattern's two cells; tie goes to the majority vote.
template <class T>
Label decide(const ByTrueLabelCounts<T>& partition, DecisionPattern pattern) {
    const T& cell_a = partition.cell(Label::a, pattern);
    const T& cell_b = partition.cell(Label::b, pattern);
    if (cell_a > cell_b) return Label::a;
    if (cell_b > cell_a) return Label::b;
    return mv_decide(pattern);
}

// Errors a decider makes against integer ground truth: per pattern, the
// ground-truth count of the label not chosen. Addends split rows by their
// majority label (the two-term sums quoted for the reference experiment).
struct ErrorBreakdown {
    std::uint64_t total = 0;
    std::uint64_t majority_a_rows = 0;
    std::uint64_t majority_b_rows = 0;
};

template <class DeciderFn>
ErrorBreakdown count_errors(const GroundTruthCounts& ground_truth, DeciderFn&& decider) {
    ErrorBreakdown out;
    for (int code = 0; code < 8; ++code) {
        const DecisionPattern p(static_cast<std::uint8_t>(code));
        const Label chosen = decider(p);
        const std::uint64_t missed = ground_truth.cell(other(chosen), p);
        out.total += missed;
        (mv_decide(p) == Label::a ? out.majority_a_rows : out.majority_b_rows) += missed;
    }
    return out;
}

// All C(N,3) trios in lexicographic id order; throws ConfigError for N < 3.
std::vector<std::array<std::string, 3>> enumerate_trios(std::vector<std::string> classifier_ids);

struct Deviations {
    BigFloat prevalence{};
    std::array<std::array<BigFloat, 2>, 3> acc{};  // absolute error per slot and label
};

struct ComparisonReport {
    PatternCounts observed;
    GroundTruthCounts ground_truth;
    GroundTruthCounts mv_cells;

    AeSolution ae;
    std::optional<PartitionEstimate<BigFloat>> ae_partition;        // absent when no candidate selected
    std::optional<ByTrueLabelCounts<std::int64_t>> ae_rounded;

    ErrorBreakdown gt_errors;  // argmax on the true partition (per-pattern optimum)
    ErrorBreakdown mv_errors;
    std::optional<ErrorBreakdown> ae_errors;

    GroundTruthEvaluation gt_eval;
    MvEvaluation mv_eval;
    std::optional<Deviations> ae_deviation, mv_deviation;  // vs ground-truth evaluation
};

ComparisonReport compare_methods(const GroundTruthCounts& ground_truth,
                                 const SelectionPolicy& policy = {});

}  // namespace ae
