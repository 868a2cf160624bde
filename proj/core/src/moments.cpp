#include "ae/moments.hpp"

namespace ae {

Rational marginal_b(const PatternFrequencies& freqs, int slot) {
    Rational sum = 0;
    for (int code = 0; code < 8; ++code) {
        const DecisionPattern p(static_cast<std::uint8_t>(code));
        if (p.slot(slot) == Label::b) sum += freqs.f[code];
    }
    return sum;
}

Rational delta_pair(const PatternFrequencies& freqs, int s, int t) {
    Rational joint_bb = 0;
    for (int code = 0; code < 8; ++code) {
        const DecisionPattern p(static_cast<std::uint8_t>(code));
        if (p.slot(s) == Label::b && p.slot(t) == Label::b) joint_bb += freqs.f[code];
    }
    return joint_bb - marginal_b(freqs, s) * marginal_b(freqs, t);
}

Rational delta_trio(const PatternFrequencies& freqs) {
    const Rational f_bbb = freqs.at(DecisionPattern::of(Label::b, Label::b, Label::b));
    const std::array<Rational, 3> f_b = {marginal_b(freqs, 0), marginal_b(freqs, 1), marginal_b(freqs, 2)};
    return f_bbb - (f_b[0] * f_b[1] * f_b[2] + f_b[0] * delta_pair(freqs, 1, 2) +
                    f_b[1] * delta_pair(freqs, 0, 2) + f_b[2] * delta_pair(freqs, 0, 1));
}

TrioMoments trio_moments(const PatternFrequencies& freqs) {
    TrioMoments m;
    for (int s = 0; s < 3; ++s) m.f_b[s] = marginal_b(freqs, s);
    m.pair[0] = delta_pair(freqs, 0, 1);
    m.pair[1] = delta_pair(freqs, 0, 2);
    m.pair[2] = delta_pair(freqs, 1, 2);
    m.trio = freqs.at(DecisionPattern::of(Label::b, Label::b, Label::b)) -
             (m.f_b[0] * m.f_b[1] * m.f_b[2] + m.f_b[0] * m.pair[2] + m.f_b[1] * m.pair[1] +
              m.f_b[2] * m.pair[0]);
    return m;
}

}  // namespace ae
