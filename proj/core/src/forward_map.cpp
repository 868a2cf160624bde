#include "ae/forward_map.hpp"

namespace ae {

PatternFrequencies pattern_frequencies(const RationalPoint& pt) {
    if (!pt.valid()) throw DomainError("forward map requires p_a and all accuracies in [0,1]");
    PatternFrequencies out;
    out.f = pattern_probabilities(pt);
    out.validate();
    return out;
}

}  // namespace ae
