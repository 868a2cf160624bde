#include "doctest.h"

#include "ae/forward_map.hpp"
#include "fixtures.hpp"

using namespace ae;

TEST_CASE("forward frequencies are exact and normalized") {
    const PatternFrequencies freqs = pattern_frequencies(fixtures::roundtrip_point());
    Rational sum = 0;
    for (int code = 0; code < 8; ++code) {
        CHECK(freqs.f[code] >= 0);
        sum += freqs.f[code];
    }
    CHECK(sum == 1);

    RationalPoint bad = fixtures::roundtrip_point();
    bad.p_a = Rational(-1, 10);
    CHECK_THROWS_AS(pattern_frequencies(bad), DomainError);
}

TEST_CASE("double-root fixture counts are the exact forward image") {
    const PatternFrequencies freqs = pattern_frequencies(fixtures::double_root_point());
    const PatternCounts counts = fixtures::double_root_counts();
    for (const DecisionPattern p : DecisionPattern::canonical())
        CHECK(freqs.at(p) == Rational(counts.at(p), counts.q));
}

TEST_CASE("swap transform is a frequency-preserving involution") {
    const RationalPoint pt = fixtures::roundtrip_point();
    const RationalPoint swapped = swap_transform(pt);
    CHECK(swap_transform(swapped) == pt);
    CHECK(swapped.p_a == Rational(7, 10));
    CHECK(swapped.pi[0][0] == Rational(2, 10));
    CHECK(pattern_probabilities(swapped) == pattern_probabilities(pt));
}

TEST_CASE("expected partition rows sum to q times the pattern probability") {
    const RationalPoint pt = fixtures::correlated_point();
    const auto cells = expected_partition(pt, 10000);
    const auto probs = pattern_probabilities(pt);
    for (int code = 0; code < 8; ++code)
        CHECK(cells.a[code] + cells.b[code] == Rational(10000) * probs[code]);
}

TEST_CASE("partition table rounds from a nearby evaluation point") {
    // Reconstruct the point implied by the reference estimate columns: its
    // prevalence is the a-column total over q and its accuracies are cell
    // ratios; the expected partition then lands within one count per cell.
    const auto ae_cells = fixtures::reference_ae_cells();
    const auto canonical = DecisionPattern::canonical();
    Rational total_a = 0;
    for (const auto& row : ae_cells) total_a += row[0];
    RationalPoint pt;
    pt.p_a = total_a / 20000;
    CHECK(pt.p_a == Rational(111, 1250));
    for (int s = 0; s < 3; ++s) {
        Rational agree_a = 0, agree_b = 0;
        for (int i = 0; i < 8; ++i) {
            if (canonical[i].slot(s) == Label::a) agree_a += ae_cells[i][0];
            if (canonical[i].slot(s) == Label::b) agree_b += ae_cells[i][1];
        }
        pt.pi[s][0] = agree_a / total_a;
        pt.pi[s][1] = agree_b / (20000 - total_a);
    }
    const auto cells = expected_partition(pt, 20000);
    for (int i = 0; i < 8; ++i) {
        const Rational da = cells.cell(Label::a, canonical[i]) - ae_cells[i][0];
        const Rational db = cells.cell(Label::b, canonical[i]) - ae_cells[i][1];
        CHECK(abs(da) <= 1);
        CHECK(abs(db) <= 1);
    }
}
