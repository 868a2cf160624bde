#include "ae/model.hpp"

#include <algorithm>
#include <numeric>

namespace ae {

std::optional<Label> label_from_char(char c) {
    if (c == 'a') return Label::a;
    if (c == 'b') return Label::b;
    return std::nullopt;
}

const std::array<DecisionPattern, 8>& DecisionPattern::canonical() {
    static const std::array<DecisionPattern, 8> order = {
        DecisionPattern(0), DecisionPattern(1), DecisionPattern(2), DecisionPattern(4),
        DecisionPattern(6), DecisionPattern(5), DecisionPattern(3), DecisionPattern(7)};
    return order;
}

std::string DecisionPattern::str() const {
    return {to_char(slot(0)), to_char(slot(1)), to_char(slot(2))};
}

DecisionPattern DecisionPattern::parse(std::string_view text) {
    if (text.size() != 3) throw InputError("pattern must be 3 labels: '" + std::string(text) + "'");
    std::array<Label, 3> labels{};
    for (int s = 0; s < 3; ++s) {
        const auto l = label_from_char(text[s]);
        if (!l) throw InputError("pattern has non-label character: '" + std::string(text) + "'");
        labels[s] = *l;
    }
    return DecisionPattern::of(labels[0], labels[1], labels[2]);
}

PatternCounts PatternCounts::from_canonical(const std::array<std::uint64_t, 8>& rows) {
    PatternCounts out;
    for (int i = 0; i < 8; ++i) out.at(DecisionPattern::canonical()[i]) = rows[i];
    out.q = std::accumulate(rows.begin(), rows.end(), std::uint64_t{0});
    return out;
}

std::array<std::uint64_t, 8> PatternCounts::to_canonical() const {
    std::array<std::uint64_t, 8> rows{};
    for (int i = 0; i < 8; ++i) rows[i] = at(DecisionPattern::canonical()[i]);
    return rows;
}

void PatternCounts::validate() const {
    const auto total = std::accumulate(n.begin(), n.end(), std::uint64_t{0});
    if (total != q) throw InputError("pattern counts do not sum to q");
    if (q == 0) throw InputError("empty test: q == 0");
}

void PatternFrequencies::validate() const {
    Rational sum = 0;
    for (const auto& v : f) {
        if (v < 0) throw DomainError("negative pattern frequency");
        sum += v;
    }
    if (sum != 1) throw DomainError("pattern frequencies do not sum to 1");
}

FloatPoint to_float_point(const RationalPoint& p) {
    FloatPoint out;
    out.p_a = to_bigfloat(p.p_a);
    for (int s = 0; s < 3; ++s)
        for (int l = 0; l < 2; ++l) out.pi[s][l] = to_bigfloat(p.pi[s][l]);
    return out;
}

std::optional<Label> DecisionRecord::decision_of(std::string_view classifier_id) const {
    for (const auto& [id, label] : decisions)
        if (id == classifier_id) return label;
    return std::nullopt;
}

PatternCounts project(const GroundTruthCounts& by_label) {
    PatternCounts out;
    for (int code = 0; code < 8; ++code) {
        out.n[code] = by_label.a[code] + by_label.b[code];
        out.q += out.n[code];
    }
    return out;
}

AggregateResult aggregate(const std::vector<DecisionRecord>& records,
                          const std::array<std::string, 3>& trio) {
    AggregateResult out;
    GroundTruthCounts by_label;
    bool all_truth = true;
    for (const auto& record : records) {
        std::array<Label, 3> decisions{};
        for (int s = 0; s < 3; ++s) {
            const auto d = record.decision_of(trio[s]);
            if (!d) {
                throw InputError("record '" + record.item_id + "' is missing a decision for classifier '" +
                                 trio[s] + "'");
            }
            decisions[s] = *d;
        }
        const auto pattern = DecisionPattern::of(decisions[0], decisions[1], decisions[2]);
        out.counts.at(pattern) += 1;
        out.counts.q += 1;
        if (record.true_label) by_label.cell(*record.true_label, pattern) += 1;
        else all_truth = false;
    }
    if (all_truth && !records.empty()) out.by_label = by_label;
    return out;
}

PatternFrequencies frequencies(const PatternCounts& counts) {
    if (counts.q == 0) throw InputError("empty test: q == 0");
    counts.validate();
    PatternFrequencies out;
    for (int code = 0; code < 8; ++code) out.f[code] = Rational(counts.n[code], counts.q);
    out.validate();
    return out;
}

}  // namespace ae
