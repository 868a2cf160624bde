#include "ae/decision_engine.hpp"

#include <algorithm>
#include <cmath>

#include "ae/forward_map.hpp"

namespace ae {
namespace {

template <class S>
bool clamp01(S& x) {
    if (x < 0) {
        x = 0;
        return true;
    }
    if (x > 1) {
        x = 1;
        return true;
    }
    return false;
}

std::int64_t round_half_away(const Rational& x) {
    using boost::multiprecision::denominator;
    using boost::multiprecision::numerator;
    const bool negative = x < 0;
    const Rational y = (negative ? -x : x) + Rational(1, 2);
    const BigInt fl = numerator(y) / denominator(y);
    return (negative ? -fl : fl).convert_to<std::int64_t>();
}

std::int64_t round_half_away(const BigFloat& x) {
    const BigFloat fl =
        x < 0 ? -boost::multiprecision::floor(-x + BigFloat(0.5))
              : boost::multiprecision::floor(x + BigFloat(0.5));
    return fl.convert_to<std::int64_t>();
}

template <class S>
ByTrueLabelCounts<std::int64_t> round_partition(const PartitionEstimate<S>& estimate) {
    ByTrueLabelCounts<std::int64_t> out;
    for (int code = 0; code < 8; ++code) {
        const DecisionPattern p(static_cast<std::uint8_t>(code));
        const std::int64_t b = round_half_away(estimate.cells.cell(Label::b, p));
        out.cell(Label::b, p) = b;
        out.cell(Label::a, p) = static_cast<std::int64_t>(estimate.observed.at(p)) - b;
    }
    return out;
}

Deviations deviations_from(const FloatPoint& estimate, const FloatPoint& truth) {
    Deviations out;
    out.prevalence = boost::multiprecision::abs(estimate.p_a - truth.p_a);
    for (int s = 0; s < 3; ++s)
        for (int l = 0; l < 2; ++l)
            out.acc[s][l] = boost::multiprecision::abs(estimate.pi[s][l] - truth.pi[s][l]);
    return out;
}

}  // namespace

template <class S>
PartitionEstimate<S> estimate_partition(EvaluationPoint<S> point, const PatternCounts& counts) {
    counts.validate();
    PartitionEstimate<S> out;
    out.observed = counts;
    out.clamped = clamp01(point.p_a);
    for (int s = 0; s < 3; ++s)
        for (int l = 0; l < 2; ++l) out.clamped |= clamp01(point.pi[s][l]);
    const S p_b = S(1) - point.p_a;
    for (int code = 0; code < 8; ++code) {
        const DecisionPattern p(static_cast<std::uint8_t>(code));
        S cell_b = S(counts.q) * p_b;
        for (int s = 0; s < 3; ++s) {
            const S& pi_b = point.pi[s][static_cast<int>(Label::b)];
            cell_b *= p.slot(s) == Label::b ? pi_b : S(1) - pi_b;
        }
        const S cell_a = S(counts.at(p)) - cell_b;
        out.cells.cell(Label::b, p) = cell_b;
        out.cells.cell(Label::a, p) = cell_a;
        if (cell_a < 0) out.negative_cells = true;
    }
    return out;
}

template PartitionEstimate<Rational> estimate_partition(EvaluationPoint<Rational>,
                                                        const PatternCounts&);
template PartitionEstimate<BigFloat> estimate_partition(EvaluationPoint<BigFloat>,
                                                        const PatternCounts&);

ByTrueLabelCounts<std::int64_t> rounded_partition(const PartitionEstimate<Rational>& estimate) {
    return round_partition(estimate);
}

ByTrueLabelCounts<std::int64_t> rounded_partition(const PartitionEstimate<BigFloat>& estimate) {
    return round_partition(estimate);
}

std::vector<std::array<std::string, 3>> enumerate_trios(std::vector<std::string> classifier_ids) {
    if (classifier_ids.size() < 3)
        throw ConfigError("trio enumeration needs at least three classifiers, got " +
                          std::to_string(classifier_ids.size()));
    std::sort(classifier_ids.begin(), classifier_ids.end());
    std::vector<std::array<std::string, 3>> out;
    const std::size_t n = classifier_ids.size();
    for (std::size_t i = 0; i + 2 < n; ++i)
        for (std::size_t j = i + 1; j + 1 < n; ++j)
            for (std::size_t k = j + 1; k < n; ++k)
                out.push_back({classifier_ids[i], classifier_ids[j], classifier_ids[k]});
    return out;
}

ComparisonReport compare_methods(const GroundTruthCounts& ground_truth,
                                 const SelectionPolicy& policy) {
    ComparisonReport r;
    r.ground_truth = ground_truth;
    r.observed = project(ground_truth);
    const PatternFrequencies freqs = frequencies(r.observed);

    r.ae = evaluate(r.observed, policy);
    r.mv_cells = mv_partition(r.observed);
    r.gt_eval = ground_truth_evaluation(ground_truth);
    r.mv_eval = mv_evaluate(freqs);

    r.gt_errors =
        count_errors(ground_truth, [&](DecisionPattern p) { return decide(ground_truth, p); });
    r.mv_errors = count_errors(ground_truth, [](DecisionPattern p) { return mv_decide(p); });

    if (const Candidate* chosen = r.ae.selected_candidate()) {
        r.ae_partition = estimate_partition<BigFloat>(chosen->approx, r.observed);
        r.ae_rounded = rounded_partition(*r.ae_partition);
        const auto& cells = r.ae_partition->cells;
        r.ae_errors =
            count_errors(ground_truth, [&](DecisionPattern p) { return decide(cells, p); });
    }

    if (r.gt_eval.fully_defined()) {
        const FloatPoint truth = to_float_point(r.gt_eval.point());
        if (const Candidate* chosen = r.ae.selected_candidate())
            r.ae_deviation = deviations_from(chosen->approx, truth);
        if (r.mv_eval.fully_defined())
            r.mv_deviation = deviations_from(to_float_point(r.mv_eval.point()), truth);
    }
    return r;
}

}  // namespace ae
