#ifndef REGTENSOR_FAMILY_HPP
#define REGTENSOR_FAMILY_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "engine.hpp"

namespace regtensor {

/// A pair of binomial towers over k = F_p(x_1^{p^e}, ..., x_n^{p^e}).
/// K is purely inseparable over k; L is either purely inseparable or has a
/// transcendental z (not in k) below its inseparable steps.
struct FamilyInstance {
    std::string label;
    std::uint64_t p = 0;
    NamedField K;
    NamedField L;
    bool l_transcendental = false;
};

/// The enumerable test family: p in {2, 3}, at most two inseparable
/// generators per side, e <= 2, at most three ambient variables. Pairs in
/// which a generator lies in the field of the earlier ones are skipped.
std::vector<FamilyInstance> binomial_family();

}  // namespace regtensor

#endif  // REGTENSOR_FAMILY_HPP
