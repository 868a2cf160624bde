#pragma once

#include <array>

#include "ae/model.hpp"
#include "ae/numeric.hpp"

namespace ae {

// Observable moment statistics of a trio, all exact rationals.
struct TrioMoments {
    std::array<Rational, 3> f_b{};    // marginal frequency of voting b, per slot
    std::array<Rational, 3> pair{};   // pair[0]=delta(i,j), pair[1]=delta(i,k), pair[2]=delta(j,k)
    Rational trio{};                  // delta(i,j,k), third central moment

    // Index into pair[] of the pair NOT containing the given slot.
    static constexpr int other_pair(int slot) { return 2 - slot; }

    static constexpr std::pair<int, int> pair_slots(int pair_index) {
        constexpr std::pair<int, int> slots[3] = {{0, 1}, {0, 2}, {1, 2}};
        return slots[pair_index];
    }
    static constexpr int pair_index(int s, int t) {
        return s + t - 1;  // (0,1)->0, (0,2)->1, (1,2)->2
    }
};

// f_{b_s}: sum of the four pattern frequencies where slot s voted b.
Rational marginal_b(const PatternFrequencies& freqs, int slot);

// delta(s,t) = joint-bb frequency minus product of b-marginals.
Rational delta_pair(const PatternFrequencies& freqs, int s, int t);

// delta(i,j,k) = f_bbb - (f_bi f_bj f_bk + f_bi delta(j,k) + f_bj delta(i,k) + f_bk delta(i,j)).
Rational delta_trio(const PatternFrequencies& freqs);

TrioMoments trio_moments(const PatternFrequencies& freqs);

}  // namespace ae
