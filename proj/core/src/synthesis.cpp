#include "ae/synthesis.hpp"

#include <algorithm>
#include <string>

#include "ae/moments.hpp"

namespace ae {
namespace {

double to_double(const Rational& r) { return r.convert_to<double>(); }

// P(decide b | true label) per slot.
Rational decide_b_probability(const RationalPoint& point, int slot, Label label) {
    return label == Label::a ? Rational(1) - point.acc(slot, Label::a) : point.acc(slot, Label::b);
}

DecisionRecord make_record(std::uint64_t index, const std::array<Label, 3>& decisions, Label truth) {
    DecisionRecord rec;
    rec.item_id = std::to_string(index + 1);
    for (int s = 0; s < 3; ++s) rec.decisions.emplace_back(std::to_string(s + 1), decisions[s]);
    rec.true_label = truth;
    return rec;
}

}  // namespace

SampleResult sample_independent(const RationalPoint& point, std::uint64_t q, std::uint64_t seed,
                                bool with_records) {
    if (!point.valid()) throw DomainError("sampling requires a point within [0,1]^7");
    SampleResult out;
    if (with_records) out.records.reserve(q);
    Rng rng(seed);
    const double p_a = to_double(point.p_a);
    double acc[3][2];
    for (int s = 0; s < 3; ++s)
        for (int l = 0; l < 2; ++l) acc[s][l] = to_double(point.pi[s][l]);
    for (std::uint64_t i = 0; i < q; ++i) {
        const Label truth = rng.bernoulli(p_a) ? Label::a : Label::b;
        std::array<Label, 3> decisions{};
        for (int s = 0; s < 3; ++s) {
            const bool correct = rng.bernoulli(acc[s][static_cast<int>(truth)]);
            decisions[s] = correct ? truth : other(truth);
        }
        const auto pattern = DecisionPattern::of(decisions[0], decisions[1], decisions[2]);
        out.by_label.cell(truth, pattern) += 1;
        if (with_records) out.records.push_back(make_record(i, decisions, truth));
    }
    return out;
}

void CorrelationSpec::validate() const {
    bool used[3] = {false, false, false};
    for (const auto& c : couplings) {
        if (c.pair < 0 || c.pair > 2) throw ConfigError("coupling pair index must be 0, 1, or 2");
        if (c.rho < -1 || c.rho > 1) throw ConfigError("coupling weight must lie in [-1, 1]");
        if (c.rho == 0) continue;
        const auto [s, t] = TrioMoments::pair_slots(c.pair);
        if (used[s] || used[t]) throw ConfigError("coupled pairs must be disjoint");
        used[s] = used[t] = true;
    }
}

bool CorrelationSpec::effectively_independent() const {
    return std::all_of(couplings.begin(), couplings.end(),
                       [](const PairCoupling& c) { return c.rho == 0; });
}

Rational CorrelationSpec::target_gamma(int pair, Label label, const RationalPoint& point) const {
    Rational rho = 0;
    for (const auto& c : couplings)
        if (c.pair == pair) rho = c.rho;
    const auto [s, t] = TrioMoments::pair_slots(pair);
    const Rational pi_s = point.acc(s, label);
    const Rational pi_t = point.acc(t, label);
    if (rho >= 0) return rho * (std::min(pi_s, pi_t) - pi_s * pi_t);
    return -rho * (std::max(Rational(0), Rational(pi_s + pi_t - 1)) - pi_s * pi_t);
}

SampleResult sample_correlated(const RationalPoint& point, std::uint64_t q,
                               const CorrelationSpec& spec, std::uint64_t seed, bool with_records) {
    spec.validate();
    if (spec.effectively_independent()) return sample_independent(point, q, seed, with_records);
    if (!point.valid()) throw DomainError("sampling requires a point within [0,1]^7");

    int partner[3] = {-1, -1, -1};  // partner[s] = t for the coupled pair (s, t), s < t
    double rho[3] = {0, 0, 0};
    for (const auto& c : spec.couplings) {
        if (c.rho == 0) continue;
        const auto [s, t] = TrioMoments::pair_slots(c.pair);
        partner[s] = t;
        rho[s] = to_double(c.rho);
    }
    double e_b[3][2];  // P(decide b | label)
    for (int s = 0; s < 3; ++s)
        for (int l = 0; l < 2; ++l)
            e_b[s][l] = to_double(decide_b_probability(point, s, static_cast<Label>(l)));

    SampleResult out;
    if (with_records) out.records.reserve(q);
    Rng rng(seed);
    const double p_a = to_double(point.p_a);
    for (std::uint64_t i = 0; i < q; ++i) {
        const Label truth = rng.bernoulli(p_a) ? Label::a : Label::b;
        const int lbl = static_cast<int>(truth);
        std::array<Label, 3> decisions{};
        bool done[3] = {false, false, false};
        for (int s = 0; s < 3; ++s) {
            if (done[s]) continue;
            if (partner[s] >= 0) {
                const int t = partner[s];
                bool ds, dt;
                if (rng.bernoulli(std::abs(rho[s]))) {
                    const double u = rng.uniform();
                    ds = u < e_b[s][lbl];
                    dt = (rho[s] > 0 ? u : 1.0 - u) < e_b[t][lbl];
                } else {
                    ds = rng.bernoulli(e_b[s][lbl]);
                    dt = rng.bernoulli(e_b[t][lbl]);
                }
                decisions[s] = ds ? Label::b : Label::a;
                decisions[t] = dt ? Label::b : Label::a;
                done[s] = done[t] = true;
            } else {
                decisions[s] = rng.bernoulli(e_b[s][lbl]) ? Label::b : Label::a;
                done[s] = true;
            }
        }
        const auto pattern = DecisionPattern::of(decisions[0], decisions[1], decisions[2]);
        out.by_label.cell(truth, pattern) += 1;
        if (with_records) out.records.push_back(make_record(i, decisions, truth));
    }
    return out;
}

ByTrueLabelCounts<Rational> expected_correlated_counts(const RationalPoint& point, std::uint64_t q,
                                                       const CorrelationSpec& spec) {
    spec.validate();
    if (!point.valid()) throw DomainError("expected counts require a point within [0,1]^7");
    int partner[3] = {-1, -1, -1};
    Rational rho[3] = {0, 0, 0};
    for (const auto& c : spec.couplings) {
        if (c.rho == 0) continue;
        const auto [s, t] = TrioMoments::pair_slots(c.pair);
        partner[s] = t;
        rho[s] = c.rho;
    }
    ByTrueLabelCounts<Rational> out;
    for (const Label label : {Label::a, Label::b}) {
        const Rational p_label = label == Label::a ? point.p_a : point.p_b();
        Rational e[3];
        for (int s = 0; s < 3; ++s) e[s] = decide_b_probability(point, s, label);
        for (int code = 0; code < 8; ++code) {
            const DecisionPattern pattern(static_cast<std::uint8_t>(code));
            Rational prob = 1;
            bool done[3] = {false, false, false};
            for (int s = 0; s < 3; ++s) {
                if (done[s]) continue;
                if (partner[s] >= 0) {
                    const int t = partner[s];
                    Rational p_bb;
                    if (rho[s] >= 0)
                        p_bb = rho[s] * std::min(e[s], e[t]) + (1 - rho[s]) * e[s] * e[t];
                    else
                        p_bb = -rho[s] * std::max(Rational(0), Rational(e[s] + e[t] - 1)) +
                               (1 + rho[s]) * e[s] * e[t];
                    const bool bs = pattern.slot(s) == Label::b;
                    const bool bt = pattern.slot(t) == Label::b;
                    if (bs && bt) prob *= p_bb;
                    else if (bs) prob *= e[s] - p_bb;
                    else if (bt) prob *= e[t] - p_bb;
                    else prob *= 1 - e[s] - e[t] + p_bb;
                    done[s] = done[t] = true;
                } else {
                    prob *= pattern.slot(s) == Label::b ? e[s] : 1 - e[s];
                    done[s] = true;
                }
            }
            out.cell(label, pattern) = Rational(q) * p_label * prob;
        }
    }
    return out;
}

bool GroundTruthEvaluation::fully_defined() const {
    for (int s = 0; s < 3; ++s)
        if (!pi_a[s] || !pi_b[s]) return false;
    return true;
}

RationalPoint GroundTruthEvaluation::point() const {
    if (!fully_defined()) throw DomainError("ground-truth accuracies undefined for an absent label");
    RationalPoint pt;
    pt.p_a = p_a;
    for (int s = 0; s < 3; ++s) {
        pt.pi[s][static_cast<int>(Label::a)] = *pi_a[s];
        pt.pi[s][static_cast<int>(Label::b)] = *pi_b[s];
    }
    return pt;
}

GroundTruthEvaluation ground_truth_evaluation(const GroundTruthCounts& ground_truth,
                                              ZeroPrevalenceMode mode) {
    const std::uint64_t q_a = ground_truth.label_total(Label::a);
    const std::uint64_t q_b = ground_truth.label_total(Label::b);
    if (q_a + q_b == 0) throw InputError("empty ground truth");
    GroundTruthEvaluation out;
    out.p_a = Rational(q_a, q_a + q_b);
    for (int s = 0; s < 3; ++s) {
        for (const Label label : {Label::a, Label::b}) {
            const std::uint64_t q_label = label == Label::a ? q_a : q_b;
            auto& cell = (label == Label::a ? out.pi_a : out.pi_b)[s];
            if (q_label == 0) {
                if (mode == ZeroPrevalenceMode::substitute_zero) cell = Rational(0);
                continue;
            }
            std::uint64_t agree = 0;
            for (int code = 0; code < 8; ++code) {
                const DecisionPattern p(static_cast<std::uint8_t>(code));
                if (p.slot(s) == label) agree += ground_truth.cell(label, p);
            }
            cell = Rational(agree, q_label);
        }
    }
    return out;
}

std::optional<Rational> error_correlation_pair(const GroundTruthCounts& ground_truth, int s, int t,
                                               Label label) {
    const std::uint64_t q_label = ground_truth.label_total(label);
    if (q_label == 0) return std::nullopt;
    const auto eval = ground_truth_evaluation(ground_truth);
    const Rational pi_s = *(label == Label::a ? eval.pi_a : eval.pi_b)[s];
    const Rational pi_t = *(label == Label::a ? eval.pi_a : eval.pi_b)[t];
    Rational sum = 0;
    for (int code = 0; code < 8; ++code) {
        const DecisionPattern p(static_cast<std::uint8_t>(code));
        const Rational weight(ground_truth.cell(label, p), q_label);
        const Rational c_s = p.slot(s) == label ? 1 : 0;
        const Rational c_t = p.slot(t) == label ? 1 : 0;
        sum += weight * (c_s - pi_s) * (c_t - pi_t);
    }
    return sum;
}

std::optional<Rational> error_correlation_trio(const GroundTruthCounts& ground_truth, Label label) {
    const std::uint64_t q_label = ground_truth.label_total(label);
    if (q_label == 0) return std::nullopt;
    const auto eval = ground_truth_evaluation(ground_truth);
    std::array<Rational, 3> pi{};
    for (int s = 0; s < 3; ++s) pi[s] = *(label == Label::a ? eval.pi_a : eval.pi_b)[s];
    Rational sum = 0;
    for (int code = 0; code < 8; ++code) {
        const DecisionPattern p(static_cast<std::uint8_t>(code));
        const Rational weight(ground_truth.cell(label, p), q_label);
        Rational term = weight;
        for (int s = 0; s < 3; ++s) term *= (p.slot(s) == label ? 1 : 0) - pi[s];
        sum += term;
    }
    return sum;
}

}  // namespace ae
