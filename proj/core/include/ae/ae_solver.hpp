#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ae/model.hpp"
#include "ae/moments.hpp"
#include "ae/numeric.hpp"

namespace ae {

enum class AlarmKind { clean_rational, irrational_real, complex_roots, out_of_range, degenerate };

std::string_view alarm_name(AlarmKind kind);
int alarm_exit_code(AlarmKind kind);  // 0 / 10 / 11 / 12 / 13

struct AlarmStatus {
    AlarmKind kind = AlarmKind::degenerate;
    std::string detail;
};

// Coefficients of A*p^2 + B*p + C = 0 with B = -A; A - 4C = delta_trio^2, so the
// discriminant factors as A * delta_trio^2.
struct QuadraticCoefficients {
    Rational a, b, c;
};

struct ComplexRoot {
    BigFloat real, imag;  // roots are real +- i*imag
};

struct Candidate {
    RationalPoint exact{};       // meaningful iff is_exact
    FloatPoint approx{};         // always populated
    bool is_exact = false;
    bool in_range = false;       // all 7 coordinates within [0,1]
    bool substitution_exact = false;  // forward map reproduces observed frequencies exactly
    int better_than_random = 0;  // accuracies strictly > 1/2 (of 6)

    const BigFloat& prevalence() const { return approx.p_a; }
};

enum class PolicyKind { better_than_random, low_prevalence, index };

struct SelectionPolicy {
    PolicyKind kind = PolicyKind::better_than_random;
    int index = 0;  // for PolicyKind::index

    static SelectionPolicy parse(std::string_view text);  // "better-than-random" | "low-prevalence" | "index:N"
    std::string str() const;
};

struct AeSolution {
    TrioMoments moments;
    QuadraticCoefficients quadratic;
    Rational discriminant;
    AlarmStatus alarm;
    std::vector<Candidate> candidates;       // 2 on real-root paths; 0..2 from degenerate recovery; 0 for complex
    std::optional<ComplexRoot> complex_pair; // set iff alarm is complex
    int selected = -1;                       // index into candidates, -1 when empty
    bool selection_ambiguous = false;
    bool recovered_from_double_root = false;

    const Candidate* selected_candidate() const {
        return selected >= 0 ? &candidates[static_cast<std::size_t>(selected)] : nullptr;
    }
};

// Prevalence quadratic coefficients: A = delta_trio^2 + 4*ddd, B = -A,
// C = ddd, where ddd is the product of the three pair deltas.
QuadraticCoefficients prevalence_quadratic(const TrioMoments& m);

struct PrevalenceRoots {
    AlarmStatus status;  // clean_rational here means "rational roots", range unchecked
    std::optional<std::pair<Rational, Rational>> exact;
    std::optional<std::pair<BigFloat, BigFloat>> approx;  // populated for all real-root cases
    std::optional<ComplexRoot> complex_parts;
};

PrevalenceRoots solve_prevalence(const QuadraticCoefficients& coeffs);

// Six accuracies from the per-slot linear equations once a prevalence root is
// chosen. Exact-rational and high-precision-float instantiations.
// Throws DomainError when a divisor (pair delta times trio delta) vanishes.
std::array<std::array<Rational, 2>, 3> accuracies_given_prevalence(const TrioMoments& m,
                                                                   const Rational& p_a);
std::array<std::array<BigFloat, 2>, 3> accuracies_given_prevalence(const TrioMoments& m,
                                                                   const BigFloat& p_a);

// Deterministic candidate selection; returns index, sets ambiguous when the
// final smaller-prevalence tie-break was reached under better_than_random.
int select_candidate(const std::vector<Candidate>& candidates, const Rational& mv_prevalence,
                     const SelectionPolicy& policy, bool& ambiguous);

AeSolution evaluate(const PatternFrequencies& freqs, const SelectionPolicy& policy = {});
AeSolution evaluate(const PatternCounts& counts, const SelectionPolicy& policy = {});

}  // namespace ae
