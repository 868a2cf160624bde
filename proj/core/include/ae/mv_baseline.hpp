#pragma once

#include <array>
#include <optional>

#include "ae/model.hpp"
#include "ae/numeric.hpp"

namespace ae {

// Label held by at least 2 of the 3 decisions.
Label mv_decide(DecisionPattern pattern);

// MV's implied partition: the majority label takes the full observed count.
GroundTruthCounts mv_partition(const PatternCounts& counts);

// Fraction of items whose majority vote is a.
Rational mv_prevalence(const PatternFrequencies& freqs);

// MV-imputed evaluation: prevalence from majority labels, accuracies as the
// ratio of majority-agreeing frequency to MV prevalence. Accuracies for a
// label with zero MV prevalence are undefined.
struct MvEvaluation {
    Rational p_a;
    std::array<std::optional<Rational>, 3> pi_a{}, pi_b{};

    bool fully_defined() const;
    RationalPoint point() const;  // throws DomainError when not fully defined
};

MvEvaluation mv_evaluate(const PatternFrequencies& freqs);

}  // namespace ae
