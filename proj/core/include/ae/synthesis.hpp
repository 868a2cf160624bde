#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "ae/model.hpp"
#include "ae/numeric.hpp"

namespace ae {

// Deterministic uniform source; the bit mapping is fixed so seeded runs are
// reproducible across platforms.
struct Rng {
    std::mt19937_64 engine;

    explicit Rng(std::uint64_t seed) : engine(seed) {}
    double uniform() { return static_cast<double>(engine() >> 11) * 0x1.0p-53; }
    bool bernoulli(double p) { return uniform() < p; }
};

struct SampleResult {
    GroundTruthCounts by_label;
    std::vector<DecisionRecord> records;  // filled iff requested
};

// Per item: true label with prevalence p_a, then each classifier correct
// independently with its per-label accuracy.
SampleResult sample_independent(const RationalPoint& point, std::uint64_t q, std::uint64_t seed,
                                bool with_records = false);

// Shared-draw mixture coupling for one pair: with probability |rho| the two
// classifiers reuse a single uniform (antithetic when rho < 0), otherwise they
// draw independently. Targeted pairs must be disjoint.
struct PairCoupling {
    int pair;      // 0=(1,2), 1=(1,3), 2=(2,3), indices into TrioMoments::pair_slots
    Rational rho;  // mixture weight in [-1, 1]
};

struct CorrelationSpec {
    std::vector<PairCoupling> couplings;

    void validate() const;  // throws ConfigError on unachievable/overlapping specs
    bool effectively_independent() const;

    // Closed-form coupling covariance for the given pair and label:
    // rho >= 0: rho * (min(pi_i, pi_j) - pi_i*pi_j)
    // rho <  0: |rho| * (max(0, pi_i + pi_j - 1) - pi_i*pi_j)
    Rational target_gamma(int pair, Label label, const RationalPoint& point) const;
};

SampleResult sample_correlated(const RationalPoint& point, std::uint64_t q,
                               const CorrelationSpec& spec, std::uint64_t seed,
                               bool with_records = false);

// Exact expected by-true-label cells under the coupling mechanism (rationals;
// the oracle for sample_correlated and the error-correlation formulas).
ByTrueLabelCounts<Rational> expected_correlated_counts(const RationalPoint& point, std::uint64_t q,
                                                       const CorrelationSpec& spec);

enum class ZeroPrevalenceMode { report_undefined, substitute_zero };

// Sample statistics of integer ground truth: prevalence Q_a/Q and per-label
// accuracy indicator averages. Accuracies of an absent label are undefined by
// default; substitute_zero substitutes 0.
struct GroundTruthEvaluation {
    Rational p_a;
    std::array<std::optional<Rational>, 3> pi_a{}, pi_b{};

    bool fully_defined() const;
    RationalPoint point() const;  // throws DomainError when not fully defined
};

GroundTruthEvaluation ground_truth_evaluation(const GroundTruthCounts& ground_truth,
                                              ZeroPrevalenceMode mode = ZeroPrevalenceMode::report_undefined);

// Per-label empirical error correlations (central moments of the correctness
// indicators); nullopt when the label has no items.
std::optional<Rational> error_correlation_pair(const GroundTruthCounts& ground_truth, int s, int t,
                                               Label label);
std::optional<Rational> error_correlation_trio(const GroundTruthCounts& ground_truth, Label label);

}  // namespace ae
