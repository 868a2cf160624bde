#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ae/numeric.hpp"

namespace ae {

struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct DomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class Label : std::uint8_t { a = 0, b = 1 };

constexpr Label other(Label l) { return l == Label::a ? Label::b : Label::a; }
constexpr char to_char(Label l) { return l == Label::a ? 'a' : 'b'; }
std::optional<Label> label_from_char(char c);

// Joint decision of the ordered trio (i, j, k); code packs one bit per slot,
// slot 0 highest: (i<<2)|(j<<1)|k with a=0, b=1.
class DecisionPattern {
public:
    constexpr explicit DecisionPattern(std::uint8_t code) : code_(code) {
        if (code > 7) throw DomainError("pattern code out of range");
    }
    static constexpr DecisionPattern of(Label i, Label j, Label k) {
        return DecisionPattern(static_cast<std::uint8_t>(
            (static_cast<unsigned>(i) << 2) | (static_cast<unsigned>(j) << 1) | static_cast<unsigned>(k)));
    }
    constexpr Label slot(int s) const { return static_cast<Label>((code_ >> (2 - s)) & 1u); }
    constexpr std::uint8_t code() const { return code_; }

    // Table row order: (aaa, aab, aba, baa, bba, bab, abb, bbb).
    static const std::array<DecisionPattern, 8>& canonical();

    std::string str() const;
    static DecisionPattern parse(std::string_view text);

    auto operator<=>(const DecisionPattern&) const = default;

private:
    std::uint8_t code_;
};

// Observed joint-decision counts over a test of size q; sum of counts == q.
struct PatternCounts {
    std::array<std::uint64_t, 8> n{};  // indexed by pattern code
    std::uint64_t q = 0;

    std::uint64_t at(DecisionPattern p) const { return n[p.code()]; }
    std::uint64_t& at(DecisionPattern p) { return n[p.code()]; }

    // Counts listed in canonical row order.
    static PatternCounts from_canonical(const std::array<std::uint64_t, 8>& rows);
    std::array<std::uint64_t, 8> to_canonical() const;

    void validate() const;
};

// Exact pattern frequencies; non-negative, summing to exactly 1.
struct PatternFrequencies {
    std::array<Rational, 8> f{};  // indexed by pattern code

    const Rational& at(DecisionPattern p) const { return f[p.code()]; }
    Rational& at(DecisionPattern p) { return f[p.code()]; }

    void validate() const;
};

// Pattern counts split by true label. Integer cells for ground truth;
// Rational/BigFloat cells for estimates (which may go negative and are then
// flagged by the decision engine).
template <class T>
struct ByTrueLabelCounts {
    std::array<T, 8> a{};
    std::array<T, 8> b{};

    const T& cell(Label l, DecisionPattern p) const {
        return (l == Label::a ? a : b)[p.code()];
    }
    T& cell(Label l, DecisionPattern p) { return (l == Label::a ? a : b)[p.code()]; }

    T label_total(Label l) const {
        T sum{};
        for (const T& v : (l == Label::a ? a : b)) sum += v;
        return sum;
    }
};

using GroundTruthCounts = ByTrueLabelCounts<std::uint64_t>;

// Prevalence of label a plus per-classifier per-label accuracies pi[slot][label].
template <class S>
struct EvaluationPoint {
    S p_a{};
    std::array<std::array<S, 2>, 3> pi{};

    S p_b() const { return S(1) - p_a; }
    const S& acc(int slot, Label l) const { return pi[slot][static_cast<int>(l)]; }
    S& acc(int slot, Label l) { return pi[slot][static_cast<int>(l)]; }

    bool valid() const {
        auto in01 = [](const S& x) { return x >= 0 && x <= 1; };
        if (!in01(p_a)) return false;
        for (const auto& row : pi)
            for (const auto& x : row)
                if (!in01(x)) return false;
        return true;
    }

    friend bool operator==(const EvaluationPoint&, const EvaluationPoint&) = default;
};

using RationalPoint = EvaluationPoint<Rational>;
using FloatPoint = EvaluationPoint<BigFloat>;

FloatPoint to_float_point(const RationalPoint& p);

// One test item as seen by the whole ensemble.
struct DecisionRecord {
    std::string item_id;
    std::vector<std::pair<std::string, Label>> decisions;  // classifier id -> label
    std::optional<Label> true_label;

    std::optional<Label> decision_of(std::string_view classifier_id) const;
};

// Sum the two true-label cells of each pattern (the integer partition).
PatternCounts project(const GroundTruthCounts& by_label);

struct AggregateResult {
    PatternCounts counts;
    std::optional<GroundTruthCounts> by_label;  // present iff every record carries truth
};

AggregateResult aggregate(const std::vector<DecisionRecord>& records,
                          const std::array<std::string, 3>& trio);

// Exact rationals n/q; throws on q == 0.
PatternFrequencies frequencies(const PatternCounts& counts);

}  // namespace ae
