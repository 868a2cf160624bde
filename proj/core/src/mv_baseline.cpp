#include "ae/mv_baseline.hpp"

#include <bit>

namespace ae {

Label mv_decide(DecisionPattern pattern) {
    return std::popcount(static_cast<unsigned>(pattern.code())) >= 2 ? Label::b : Label::a;
}

GroundTruthCounts mv_partition(const PatternCounts& counts) {
    GroundTruthCounts out;
    for (int code = 0; code < 8; ++code) {
        const DecisionPattern p(static_cast<std::uint8_t>(code));
        out.cell(mv_decide(p), p) = counts.n[code];
    }
    return out;
}

Rational mv_prevalence(const PatternFrequencies& freqs) {
    Rational sum = 0;
    for (int code = 0; code < 8; ++code) {
        const DecisionPattern p(static_cast<std::uint8_t>(code));
        if (mv_decide(p) == Label::a) sum += freqs.f[code];
    }
    return sum;
}

bool MvEvaluation::fully_defined() const {
    for (int s = 0; s < 3; ++s)
        if (!pi_a[s] || !pi_b[s]) return false;
    return true;
}

RationalPoint MvEvaluation::point() const {
    if (!fully_defined()) throw DomainError("MV accuracies undefined for a zero-prevalence label");
    RationalPoint pt;
    pt.p_a = p_a;
    for (int s = 0; s < 3; ++s) {
        pt.pi[s][static_cast<int>(Label::a)] = *pi_a[s];
        pt.pi[s][static_cast<int>(Label::b)] = *pi_b[s];
    }
    return pt;
}

MvEvaluation mv_evaluate(const PatternFrequencies& freqs) {
    MvEvaluation out;
    out.p_a = mv_prevalence(freqs);
    const Rational p_b = 1 - out.p_a;
    for (int s = 0; s < 3; ++s) {
        Rational agree_a = 0, agree_b = 0;
        for (int code = 0; code < 8; ++code) {
            const DecisionPattern p(static_cast<std::uint8_t>(code));
            const Label mv = mv_decide(p);
            if (p.slot(s) != mv) continue;
            (mv == Label::a ? agree_a : agree_b) += freqs.f[code];
        }
        if (out.p_a != 0) out.pi_a[s] = agree_a / out.p_a;
        if (p_b != 0) out.pi_b[s] = agree_b / p_b;
    }
    return out;
}

}  // namespace ae
