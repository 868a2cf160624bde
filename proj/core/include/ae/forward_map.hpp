#pragma once

#include <array>
#include <cstdint>

#include "ae/model.hpp"
#include "ae/numeric.hpp"

namespace ae {

// Probability that the trio produces the given pattern under the
// error-independent model: p_a * prod(per-slot label-a terms) + p_b * prod(label-b terms).
// Pure polynomial; callers wanting the [0,1]^7 domain check use pattern_frequencies.
template <class S>
S pattern_probability(const EvaluationPoint<S>& pt, DecisionPattern p) {
    S term_a = pt.p_a;
    S term_b = pt.p_b();
    for (int s = 0; s < 3; ++s) {
        if (p.slot(s) == Label::a) {
            term_a *= pt.acc(s, Label::a);
            term_b *= S(1) - pt.acc(s, Label::b);
        } else {
            term_a *= S(1) - pt.acc(s, Label::a);
            term_b *= pt.acc(s, Label::b);
        }
    }
    return term_a + term_b;
}

template <class S>
std::array<S, 8> pattern_probabilities(const EvaluationPoint<S>& pt) {
    std::array<S, 8> out{};
    for (int code = 0; code < 8; ++code)
        out[code] = pattern_probability(pt, DecisionPattern(static_cast<std::uint8_t>(code)));
    return out;
}

// The generating set as exact frequencies; throws DomainError outside [0,1]^7.
PatternFrequencies pattern_frequencies(const RationalPoint& pt);

// Expected by-true-label cells at test size q: cell(l, pattern) = q * p_l * prod(terms).
// Per-pattern label sums equal q * pattern_probability exactly.
template <class S>
ByTrueLabelCounts<S> expected_partition(const EvaluationPoint<S>& pt, std::uint64_t q) {
    ByTrueLabelCounts<S> out;
    for (int code = 0; code < 8; ++code) {
        const DecisionPattern p(static_cast<std::uint8_t>(code));
        S cell_a = pt.p_a;
        S cell_b = pt.p_b();
        for (int s = 0; s < 3; ++s) {
            if (p.slot(s) == Label::a) {
                cell_a *= pt.acc(s, Label::a);
                cell_b *= S(1) - pt.acc(s, Label::b);
            } else {
                cell_a *= S(1) - pt.acc(s, Label::a);
                cell_b *= pt.acc(s, Label::b);
            }
        }
        out.a[code] = cell_a * S(q);
        out.b[code] = cell_b * S(q);
    }
    return out;
}

// p_a <-> p_b, pi_a -> 1 - pi_b, pi_b -> 1 - pi_a; an involution that leaves
// every pattern probability unchanged.
template <class S>
EvaluationPoint<S> swap_transform(const EvaluationPoint<S>& pt) {
    EvaluationPoint<S> out;
    out.p_a = S(1) - pt.p_a;
    for (int s = 0; s < 3; ++s) {
        out.pi[s][static_cast<int>(Label::a)] = S(1) - pt.acc(s, Label::b);
        out.pi[s][static_cast<int>(Label::b)] = S(1) - pt.acc(s, Label::a);
    }
    return out;
}

}  // namespace ae
