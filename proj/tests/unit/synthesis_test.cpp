#include "doctest.h"

#include "ae/ae_solver.hpp"
#include "ae/forward_map.hpp"
#include "ae/synthesis.hpp"
#include "fixtures.hpp"

using namespace ae;

TEST_CASE("sampling is deterministic per seed and conserves items") {
    const RationalPoint pt = fixtures::roundtrip_point();
    const SampleResult s1 = sample_independent(pt, 5000, 42);
    const SampleResult s2 = sample_independent(pt, 5000, 42);
    const SampleResult s3 = sample_independent(pt, 5000, 43);
    CHECK(s1.by_label.a == s2.by_label.a);
    CHECK(s1.by_label.b == s2.by_label.b);
    CHECK(s1.by_label.a != s3.by_label.a);
    CHECK(s1.by_label.label_total(Label::a) + s1.by_label.label_total(Label::b) == 5000);
    CHECK(s1.records.empty());
}

TEST_CASE("records agree with the tallied counts") {
    const SampleResult sample = sample_independent(fixtures::roundtrip_point(), 600, 9, true);
    REQUIRE(sample.records.size() == 600);
    const AggregateResult agg = aggregate(sample.records, {"1", "2", "3"});
    CHECK(agg.counts.to_canonical() == project(sample.by_label).to_canonical());
    REQUIRE(agg.by_label.has_value());
    CHECK(agg.by_label->a == sample.by_label.a);
    CHECK(agg.by_label->b == sample.by_label.b);
}

TEST_CASE("large samples land near the generating point") {
    const RationalPoint pt = fixtures::roundtrip_point();
    const SampleResult sample = sample_independent(pt, 20000, 1234);
    const GroundTruthEvaluation eval = ground_truth_evaluation(sample.by_label);
    CHECK(abs(eval.p_a - Rational(3, 10)) < Rational(1, 50));
    REQUIRE(eval.fully_defined());
    for (int s = 0; s < 3; ++s) {
        CHECK(abs(*eval.pi_a[s] - pt.pi[s][0]) < Rational(1, 40));
        CHECK(abs(*eval.pi_b[s] - pt.pi[s][1]) < Rational(1, 40));
    }
}

TEST_CASE("zero coupling delegates to the independent sampler bit for bit") {
    const RationalPoint pt = fixtures::correlated_point();
    CorrelationSpec spec;
    spec.couplings.push_back({0, Rational(0)});
    const SampleResult a = sample_independent(pt, 3000, 77, true);
    const SampleResult b = sample_correlated(pt, 3000, spec, 77, true);
    CHECK(a.by_label.a == b.by_label.a);
    CHECK(a.by_label.b == b.by_label.b);
    REQUIRE(a.records.size() == b.records.size());
    for (std::size_t i = 0; i < a.records.size(); i += 500)
        CHECK(a.records[i].decisions == b.records[i].decisions);
}

TEST_CASE("coupling spec validation") {
    CorrelationSpec overlap;
    overlap.couplings.push_back({0, Rational(1, 2)});  // pair (0,1)
    overlap.couplings.push_back({1, Rational(1, 4)});  // pair (0,2) reuses slot 0
    CHECK_THROWS_AS(overlap.validate(), ConfigError);

    CorrelationSpec out_of_range;
    out_of_range.couplings.push_back({0, Rational(3, 2)});
    CHECK_THROWS_AS(out_of_range.validate(), ConfigError);

    CorrelationSpec bad_pair;
    bad_pair.couplings.push_back({5, Rational(1, 2)});
    CHECK_THROWS_AS(bad_pair.validate(), ConfigError);
}

TEST_CASE("target error covariance in closed form") {
    const RationalPoint pt = fixtures::correlated_point();
    CorrelationSpec spec;
    spec.couplings.push_back({0, Rational(1, 2)});
    CHECK(spec.target_gamma(0, Label::a, pt) == Rational(9, 100));
    CHECK(spec.target_gamma(0, Label::b, pt) == Rational(7, 100));
    CHECK(spec.target_gamma(1, Label::a, pt) == 0);  // uncoupled pair

    CorrelationSpec anti;
    anti.couplings.push_back({0, Rational(-1, 2)});
    // |rho| * (max(0, pi_i + pi_j - 1) - pi_i pi_j) = (3/10 - 42/100) / 2
    CHECK(anti.target_gamma(0, Label::a, pt) == Rational(-6, 100));
}

TEST_CASE("exact expected counts of the coupled fixture") {
    CorrelationSpec spec;
    spec.couplings.push_back({0, Rational(1, 2)});
    const auto cells = expected_correlated_counts(fixtures::correlated_point(), 10000, spec);
    const PatternCounts expected = fixtures::correlated_counts();
    for (int code = 0; code < 8; ++code)
        CHECK(cells.a[code] + cells.b[code] == expected.n[code]);

    // The coupled moments break exact solvability: the alarm must fire.
    const AeSolution solution = evaluate(expected);
    CHECK(solution.alarm.kind == AlarmKind::irrational_real);
    REQUIRE(solution.selected_candidate() != nullptr);
    CHECK(boost::multiprecision::abs(solution.selected_candidate()->approx.p_a -
                                     BigFloat("0.4061105292264150388771409")) < BigFloat("1e-20"));
}

TEST_CASE("independent expected counts reduce to the forward partition") {
    const RationalPoint pt = fixtures::roundtrip_point();
    const auto coupled = expected_correlated_counts(pt, 4000, CorrelationSpec{});
    const auto plain = expected_partition(pt, 4000);
    CHECK(coupled.a == plain.a);
    CHECK(coupled.b == plain.b);
}

TEST_CASE("sampled coupling approaches its target covariance") {
    const RationalPoint pt = fixtures::correlated_point();
    CorrelationSpec spec;
    spec.couplings.push_back({0, Rational(1, 2)});
    const SampleResult sample = sample_correlated(pt, 40000, spec, 4242);
    const auto g_a = error_correlation_pair(sample.by_label, 0, 1, Label::a);
    const auto g_b = error_correlation_pair(sample.by_label, 0, 1, Label::b);
    REQUIRE(g_a.has_value());
    REQUIRE(g_b.has_value());
    CHECK(abs(*g_a - Rational(9, 100)) < Rational(1, 50));
    CHECK(abs(*g_b - Rational(7, 100)) < Rational(1, 50));
}

TEST_CASE("error correlations vanish exactly on an independent integer table") {
    // The double-root fixture point over q = 2000 has integer expected cells.
    const auto cells = expected_partition(fixtures::double_root_point(), 2000);
    GroundTruthCounts truth;
    for (int code = 0; code < 8; ++code) {
        truth.a[code] = cells.a[code].convert_to<std::uint64_t>();
        truth.b[code] = cells.b[code].convert_to<std::uint64_t>();
        CHECK(Rational(truth.a[code]) == cells.a[code]);
        CHECK(Rational(truth.b[code]) == cells.b[code]);
    }
    for (int pair = 0; pair < 3; ++pair) {
        const auto [s, t] = TrioMoments::pair_slots(pair);
        for (const Label label : {Label::a, Label::b}) {
            const auto gamma = error_correlation_pair(truth, s, t, label);
            REQUIRE(gamma.has_value());
            CHECK(*gamma == 0);
        }
    }
    CHECK(*error_correlation_trio(truth, Label::a) == 0);
    CHECK(*error_correlation_trio(truth, Label::b) == 0);
}

TEST_CASE("ground-truth evaluation handles absent labels per mode") {
    GroundTruthCounts truth;
    truth.cell(Label::b, DecisionPattern::parse("bbb")) = 60;
    truth.cell(Label::b, DecisionPattern::parse("abb")) = 40;
    const GroundTruthEvaluation undef = ground_truth_evaluation(truth);
    CHECK(undef.p_a == 0);
    CHECK_FALSE(undef.fully_defined());
    CHECK_FALSE(undef.pi_a[0].has_value());
    REQUIRE(undef.pi_b[0].has_value());
    CHECK(*undef.pi_b[0] == Rational(3, 5));

    const GroundTruthEvaluation zeroed =
        ground_truth_evaluation(truth, ZeroPrevalenceMode::substitute_zero);
    REQUIRE(zeroed.pi_a[0].has_value());
    CHECK(*zeroed.pi_a[0] == 0);
    CHECK(zeroed.fully_defined());

    GroundTruthCounts empty;
    CHECK_THROWS_AS(ground_truth_evaluation(empty), InputError);
    CHECK_FALSE(error_correlation_pair(truth, 0, 1, Label::a).has_value());
}
