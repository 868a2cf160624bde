#include "doctest.h"

#include "ae/model.hpp"
#include "fixtures.hpp"

using namespace ae;

TEST_CASE("pattern codes pack slots with slot 0 highest") {
    const DecisionPattern p = DecisionPattern::of(Label::b, Label::a, Label::b);
    CHECK(p.code() == 5);
    CHECK(p.slot(0) == Label::b);
    CHECK(p.slot(1) == Label::a);
    CHECK(p.slot(2) == Label::b);
    CHECK(p.str() == "bab");
    for (int code = 0; code < 8; ++code) {
        const DecisionPattern q(static_cast<std::uint8_t>(code));
        CHECK(DecisionPattern::of(q.slot(0), q.slot(1), q.slot(2)) == q);
        CHECK(DecisionPattern::parse(q.str()) == q);
    }
}

TEST_CASE("canonical order lists the table rows") {
    const auto& canonical = DecisionPattern::canonical();
    const std::array<const char*, 8> expected = {"aaa", "aab", "aba", "baa",
                                                 "bba", "bab", "abb", "bbb"};
    for (int i = 0; i < 8; ++i) CHECK(canonical[i].str() == expected[i]);
}

TEST_CASE("pattern parse rejects junk") {
    CHECK_THROWS_AS(DecisionPattern::parse("ab"), InputError);
    CHECK_THROWS_AS(DecisionPattern::parse("abc"), InputError);
    CHECK_THROWS_AS(DecisionPattern::parse("aabb"), InputError);
}

TEST_CASE("counts round-trip canonical order and validate totals") {
    const PatternCounts counts = fixtures::reference_counts();
    CHECK(counts.q == 20000);
    CHECK(counts.at(DecisionPattern::parse("bba")) == 3534);
    CHECK(counts.to_canonical() ==
          std::array<std::uint64_t, 8>{568, 553, 649, 1813, 3534, 3607, 1068, 8208});
    CHECK_NOTHROW(counts.validate());

    PatternCounts bad = counts;
    bad.q += 1;
    CHECK_THROWS_AS(bad.validate(), InputError);
}

TEST_CASE("frequencies are exact fractions of q") {
    const PatternCounts counts = fixtures::reference_counts();
    const PatternFrequencies freqs = frequencies(counts);
    Rational sum = 0;
    for (const DecisionPattern p : DecisionPattern::canonical()) {
        CHECK(freqs.at(p) == Rational(counts.at(p), counts.q));
        sum += freqs.at(p);
    }
    CHECK(sum == 1);

    PatternCounts empty;
    CHECK_THROWS_AS(frequencies(empty), InputError);
}

TEST_CASE("projection sums the two true-label cells") {
    const GroundTruthCounts truth = fixtures::reference_truth();
    const PatternCounts counts = project(truth);
    CHECK(counts.to_canonical() == fixtures::reference_counts().to_canonical());
    CHECK(counts.q == 20000);
    CHECK(truth.label_total(Label::a) == 2000);
    CHECK(truth.label_total(Label::b) == 18000);
}

namespace {

DecisionRecord make_record(std::string id, Label i, Label j, Label k,
                           std::optional<Label> truth = std::nullopt) {
    DecisionRecord rec;
    rec.item_id = std::move(id);
    rec.decisions = {{"c1", i}, {"c2", j}, {"c3", k}};
    rec.true_label = truth;
    return rec;
}

}  // namespace

TEST_CASE("aggregate tallies patterns and keeps truth only when complete") {
    std::vector<DecisionRecord> records = {
        make_record("1", Label::a, Label::a, Label::a, Label::a),
        make_record("2", Label::b, Label::a, Label::b, Label::b),
        make_record("3", Label::b, Label::a, Label::b, Label::b),
    };
    const std::array<std::string, 3> trio = {"c1", "c2", "c3"};

    const AggregateResult full = aggregate(records, trio);
    CHECK(full.counts.q == 3);
    CHECK(full.counts.at(DecisionPattern::parse("bab")) == 2);
    REQUIRE(full.by_label.has_value());
    CHECK(full.by_label->cell(Label::b, DecisionPattern::parse("bab")) == 2);
    CHECK(full.by_label->cell(Label::a, DecisionPattern::parse("aaa")) == 1);

    records[1].true_label = std::nullopt;
    const AggregateResult partial = aggregate(records, trio);
    CHECK(partial.counts.q == 3);
    CHECK_FALSE(partial.by_label.has_value());

    records[1].decisions.pop_back();
    CHECK_THROWS_WITH_AS(aggregate(records, trio),
                         doctest::Contains("record '2'"), InputError);
}

TEST_CASE("evaluation point validity and swap-ready accessors") {
    RationalPoint point = fixtures::roundtrip_point();
    CHECK(point.valid());
    CHECK(point.p_b() == Rational(7, 10));
    CHECK(point.acc(2, Label::b) == Rational(9, 10));
    point.pi[1][0] = Rational(11, 10);
    CHECK_FALSE(point.valid());
}
