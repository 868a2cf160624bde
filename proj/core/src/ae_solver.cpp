#include "ae/ae_solver.hpp"

#include <algorithm>
#include <charconv>
#include <type_traits>

#include "ae/forward_map.hpp"
#include "ae/mv_baseline.hpp"

namespace ae {
namespace {

template <class S>
S to_scalar(const Rational& r) {
    if constexpr (std::is_same_v<S, Rational>) return r;
    else return to_bigfloat(r);
}

// Linear-equation coefficients per slot, 0 = a + b*p + c*pi. The pi_a
// b-coefficient is -(delta_trio^2 + 4*ddd); substituting each solved point back
// into the forward map (done by the caller for rational roots) is the ground
// truth for these formulas.
template <class S>
std::array<std::array<S, 2>, 3> solve_accuracies(const TrioMoments& m, const S& p_a) {
    const S dt = to_scalar<S>(m.trio);
    const S ddd = to_scalar<S>(m.pair[0]) * to_scalar<S>(m.pair[1]) * to_scalar<S>(m.pair[2]);
    const S big_a = dt * dt + 4 * ddd;
    std::array<std::array<S, 2>, 3> out{};
    for (int s = 0; s < 3; ++s) {
        const S d_other = to_scalar<S>(m.pair[TrioMoments::other_pair(s)]);
        const S f_bs = to_scalar<S>(m.f_b[s]);
        const S divisor = d_other * dt;
        if (divisor == 0) throw DomainError("vanishing divisor in accuracy solve");
        const S a_coeff = dt * (dt - d_other * (S(1) - f_bs)) + 2 * ddd;
        out[s][static_cast<int>(Label::a)] = -(a_coeff - big_a * p_a) / divisor;
        const S a2_coeff = f_bs * d_other * dt - 2 * ddd;
        out[s][static_cast<int>(Label::b)] = (a2_coeff + big_a * p_a) / divisor;
    }
    return out;
}

int count_better_than_random(const Candidate& c) {
    int n = 0;
    if (c.is_exact) {
        for (const auto& row : c.exact.pi)
            for (const auto& x : row) n += x > Rational(1, 2);
    } else {
        for (const auto& row : c.approx.pi)
            for (const auto& x : row) n += x > BigFloat(0.5);
    }
    return n;
}

Candidate make_exact_candidate(const RationalPoint& point, const PatternFrequencies& observed) {
    Candidate c;
    c.exact = point;
    c.approx = to_float_point(point);
    c.is_exact = true;
    c.in_range = point.valid();
    c.substitution_exact = pattern_probabilities(point) == observed.f;
    c.better_than_random = count_better_than_random(c);
    return c;
}

Candidate make_float_candidate(const FloatPoint& point) {
    Candidate c;
    c.approx = point;
    c.is_exact = false;
    c.in_range = point.valid();
    c.substitution_exact = false;
    c.better_than_random = count_better_than_random(c);
    return c;
}

std::string out_of_range_detail(const std::vector<Candidate>& candidates) {
    std::string detail = "rational roots but candidate coordinates leave [0,1]:";
    static const char* coord_names[7] = {"p_a", "pi_1a", "pi_1b", "pi_2a", "pi_2b", "pi_3a", "pi_3b"};
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        if (candidates[i].in_range) continue;
        detail += " candidate " + std::to_string(i + 1) + " (";
        const RationalPoint& pt = candidates[i].exact;
        const Rational coords[7] = {pt.p_a,      pt.pi[0][0], pt.pi[0][1], pt.pi[1][0],
                                    pt.pi[1][1], pt.pi[2][0], pt.pi[2][1]};
        bool first = true;
        for (int k = 0; k < 7; ++k) {
            if (coords[k] >= 0 && coords[k] <= 1) continue;
            if (!first) detail += ", ";
            detail += std::string(coord_names[k]) + " = " + rational_string(coords[k]);
            first = false;
        }
        detail += ")";
    }
    return detail;
}

// Double-root branch: delta_trio = 0 with A != 0 forces the double root 1/2 and
// u_s^2 = 4 * delta(s,t) * delta(s,u) / delta(t,u) with u_s = 1 - pi_sa - pi_sb.
// Keep every sign assignment whose point reproduces the observed frequencies exactly.
std::vector<Candidate> recover_double_root(const TrioMoments& m, const PatternFrequencies& observed) {
    std::array<Rational, 3> u{};
    for (int s = 0; s < 3; ++s) {
        const int t = s == 0 ? 1 : 0;
        const int v = s == 2 ? 1 : 2;
        const Rational u_sq = 4 * m.pair[TrioMoments::pair_index(std::min(s, t), std::max(s, t))] *
                              m.pair[TrioMoments::pair_index(std::min(s, v), std::max(s, v))] /
                              m.pair[TrioMoments::pair_index(t, v)];
        const auto root = exact_sqrt(u_sq);
        if (!root) return {};
        u[s] = *root;
    }
    std::vector<Candidate> found;
    for (int mask = 0; mask < 8; ++mask) {
        RationalPoint pt;
        pt.p_a = Rational(1, 2);
        for (int s = 0; s < 3; ++s) {
            const Rational us = (mask >> s) & 1 ? -u[s] : u[s];
            const Rational pi_b = m.f_b[s] - us / 2;
            pt.pi[s][static_cast<int>(Label::b)] = pi_b;
            pt.pi[s][static_cast<int>(Label::a)] = 1 - us - pi_b;
        }
        if (pattern_probabilities(pt) != observed.f) continue;
        if (std::any_of(found.begin(), found.end(),
                        [&](const Candidate& c) { return c.exact == pt; }))
            continue;
        found.push_back(make_exact_candidate(pt, observed));
    }
    return found;
}

}  // namespace

std::string_view alarm_name(AlarmKind kind) {
    switch (kind) {
        case AlarmKind::clean_rational: return "clean_rational";
        case AlarmKind::irrational_real: return "irrational_real";
        case AlarmKind::complex_roots: return "complex";
        case AlarmKind::out_of_range: return "out_of_range";
        case AlarmKind::degenerate: return "degenerate";
    }
    return "unknown";
}

int alarm_exit_code(AlarmKind kind) {
    switch (kind) {
        case AlarmKind::clean_rational: return 0;
        case AlarmKind::irrational_real: return 10;
        case AlarmKind::complex_roots: return 11;
        case AlarmKind::out_of_range: return 12;
        case AlarmKind::degenerate: return 13;
    }
    return 13;
}

SelectionPolicy SelectionPolicy::parse(std::string_view text) {
    if (text == "better-than-random") return {PolicyKind::better_than_random, 0};
    if (text == "low-prevalence") return {PolicyKind::low_prevalence, 0};
    if (text.rfind("index:", 0) == 0) {
        int n = 0;
        const auto* begin = text.data() + 6;
        const auto* end = text.data() + text.size();
        if (auto [p, ec] = std::from_chars(begin, end, n); ec == std::errc() && p == end && n >= 0)
            return {PolicyKind::index, n};
    }
    throw ConfigError("unknown selection policy: '" + std::string(text) + "'");
}

std::string SelectionPolicy::str() const {
    switch (kind) {
        case PolicyKind::better_than_random: return "better-than-random";
        case PolicyKind::low_prevalence: return "low-prevalence";
        case PolicyKind::index: return "index:" + std::to_string(index);
    }
    return "?";
}

QuadraticCoefficients prevalence_quadratic(const TrioMoments& m) {
    const Rational ddd = m.pair[0] * m.pair[1] * m.pair[2];
    const Rational a = m.trio * m.trio + 4 * ddd;
    return {a, -a, ddd};
}

PrevalenceRoots solve_prevalence(const QuadraticCoefficients& coeffs) {
    PrevalenceRoots out;
    if (coeffs.a == 0) {
        out.status = {AlarmKind::degenerate, "quadratic leading coefficient A = 0"};
        return out;
    }
    const Rational disc = coeffs.b * coeffs.b - 4 * coeffs.a * coeffs.c;
    if (disc < 0) {
        const BigFloat im = boost::multiprecision::sqrt(to_bigfloat(-disc)) /
                            boost::multiprecision::abs(to_bigfloat(2 * coeffs.a));
        out.complex_parts = ComplexRoot{BigFloat(0.5), im};
        out.status = {AlarmKind::complex_roots,
                      "negative discriminant; roots 1/2 +- i*" + decimal_string(im, 12)};
        return out;
    }
    if (const auto s = exact_sqrt(disc)) {
        const Rational r1 = (-coeffs.b - *s) / (2 * coeffs.a);
        const Rational r2 = (-coeffs.b + *s) / (2 * coeffs.a);
        out.exact = {std::min(r1, r2), std::max(r1, r2)};
        out.approx = {to_bigfloat(out.exact->first), to_bigfloat(out.exact->second)};
        out.status = {AlarmKind::clean_rational, "rational roots (range unchecked)"};
        return out;
    }
    const BigFloat root = boost::multiprecision::sqrt(to_bigfloat(disc));
    const BigFloat a2 = to_bigfloat(2 * coeffs.a);
    const BigFloat nb = to_bigfloat(-coeffs.b);
    const BigFloat r1 = (nb - root) / a2;
    const BigFloat r2 = (nb + root) / a2;
    out.approx = {std::min(r1, r2), std::max(r1, r2)};
    out.status = {AlarmKind::irrational_real, "discriminant is not a perfect rational square"};
    return out;
}

std::array<std::array<Rational, 2>, 3> accuracies_given_prevalence(const TrioMoments& m,
                                                                   const Rational& p_a) {
    return solve_accuracies<Rational>(m, p_a);
}

std::array<std::array<BigFloat, 2>, 3> accuracies_given_prevalence(const TrioMoments& m,
                                                                   const BigFloat& p_a) {
    return solve_accuracies<BigFloat>(m, p_a);
}

int select_candidate(const std::vector<Candidate>& candidates, const Rational& mv_prevalence,
                     const SelectionPolicy& policy, bool& ambiguous) {
    ambiguous = false;
    if (candidates.empty()) return -1;
    const int last = static_cast<int>(candidates.size()) - 1;
    auto prevalence_less = [&](int lhs, int rhs) {
        const Candidate& l = candidates[static_cast<std::size_t>(lhs)];
        const Candidate& r = candidates[static_cast<std::size_t>(rhs)];
        if (l.is_exact && r.is_exact) return l.exact.p_a < r.exact.p_a;
        return l.prevalence() < r.prevalence();
    };
    switch (policy.kind) {
        case PolicyKind::index:
            return std::clamp(policy.index, 0, last);
        case PolicyKind::low_prevalence: {
            int best = 0;
            for (int i = 1; i <= last; ++i)
                if (prevalence_less(i, best)) best = i;
            return best;
        }
        case PolicyKind::better_than_random: break;
    }
    std::vector<int> pool;
    int best_count = -1;
    for (int i = 0; i <= last; ++i) {
        const int count = candidates[static_cast<std::size_t>(i)].better_than_random;
        if (count > best_count) {
            best_count = count;
            pool.assign(1, i);
        } else if (count == best_count) {
            pool.push_back(i);
        }
    }
    if (pool.size() > 1) {
        const BigFloat mv = to_bigfloat(mv_prevalence);
        auto distance = [&](int i) {
            return boost::multiprecision::abs(candidates[static_cast<std::size_t>(i)].prevalence() - mv);
        };
        BigFloat best_distance = distance(pool[0]);
        std::vector<int> nearest{pool[0]};
        for (std::size_t i = 1; i < pool.size(); ++i) {
            const BigFloat d = distance(pool[i]);
            if (d < best_distance) {
                best_distance = d;
                nearest.assign(1, pool[i]);
            } else if (d == best_distance) {
                nearest.push_back(pool[i]);
            }
        }
        pool = std::move(nearest);
        if (pool.size() > 1) ambiguous = true;
    }
    int chosen = pool[0];
    for (const int i : pool)
        if (prevalence_less(i, chosen)) chosen = i;
    return chosen;
}

AeSolution evaluate(const PatternFrequencies& freqs, const SelectionPolicy& policy) {
    freqs.validate();
    AeSolution sol;
    sol.moments = trio_moments(freqs);
    sol.quadratic = prevalence_quadratic(sol.moments);
    sol.discriminant = sol.quadratic.b * sol.quadratic.b - 4 * sol.quadratic.a * sol.quadratic.c;
    const Rational mv_prev = mv_prevalence(freqs);

    const TrioMoments& m = sol.moments;
    if (sol.quadratic.a == 0) {
        sol.alarm = {AlarmKind::degenerate, "quadratic leading coefficient A = 0"};
        return sol;
    }
    for (int i = 0; i < 3; ++i) {
        if (m.pair[i] != 0) continue;
        const auto [s, t] = TrioMoments::pair_slots(i);
        std::string detail = "delta_pair(" + std::to_string(s + 1) + "," + std::to_string(t + 1) + ") = 0";
        for (int slot = 0; slot < 3; ++slot)
            if (m.f_b[slot] == 0 || m.f_b[slot] == 1)
                detail += "; classifier " + std::to_string(slot + 1) + " is constant";
        sol.alarm = {AlarmKind::degenerate, detail};
        return sol;
    }
    if (m.trio == 0) {
        sol.alarm = {AlarmKind::degenerate, "delta_trio = 0; quadratic has the double root p_a = 1/2"};
        sol.candidates = recover_double_root(m, freqs);
        if (!sol.candidates.empty()) {
            sol.recovered_from_double_root = true;
            sol.alarm.detail += "; recovered " + std::to_string(sol.candidates.size()) +
                                " forward-consistent candidate(s) by sign search";
            sol.selected = select_candidate(sol.candidates, mv_prev, policy, sol.selection_ambiguous);
        }
        return sol;
    }

    const PrevalenceRoots roots = solve_prevalence(sol.quadratic);
    if (roots.status.kind == AlarmKind::complex_roots) {
        sol.alarm = roots.status;
        sol.complex_pair = roots.complex_parts;
        return sol;
    }
    if (roots.exact) {
        for (const Rational& root : {roots.exact->first, roots.exact->second}) {
            RationalPoint pt;
            pt.p_a = root;
            pt.pi = accuracies_given_prevalence(m, root);
            sol.candidates.push_back(make_exact_candidate(pt, freqs));
        }
        const bool all_in_range = sol.candidates[0].in_range && sol.candidates[1].in_range;
        if (all_in_range) {
            sol.alarm = {AlarmKind::clean_rational,
                         "rational roots within [0,1]^7; consistent with error independence (not proof of it)"};
            if (!sol.candidates[0].substitution_exact || !sol.candidates[1].substitution_exact)
                sol.alarm.detail +=
                    "; candidates do not reproduce the observed frequencies exactly (off-variety data)";
        } else {
            sol.alarm = {AlarmKind::out_of_range, out_of_range_detail(sol.candidates)};
        }
    } else {
        for (const BigFloat& root : {roots.approx->first, roots.approx->second}) {
            FloatPoint pt;
            pt.p_a = root;
            pt.pi = accuracies_given_prevalence(m, root);
            sol.candidates.push_back(make_float_candidate(pt));
        }
        sol.alarm = {AlarmKind::irrational_real,
                     "discriminant A*delta_trio^2 is not a perfect rational square; "
                     "error independence does not hold exactly on this test"};
    }
    sol.selected = select_candidate(sol.candidates, mv_prev, policy, sol.selection_ambiguous);
    return sol;
}

AeSolution evaluate(const PatternCounts& counts, const SelectionPolicy& policy) {
    return evaluate(frequencies(counts), policy);
}

}  // namespace ae
