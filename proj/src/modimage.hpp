#ifndef REGTENSOR_MODIMAGE_HPP
#define REGTENSOR_MODIMAGE_HPP

#include <cstddef>

#include "multipoly.hpp"

namespace regtensor {

/// True when gcd(f, g) is certainly free of the variable `var`: both are
/// specialized at a random point of a finite field (an extension of F_p, or
/// F_l for a large prime l over Q) where their leading coefficients in `var`
/// survive, and the univariate images turn out coprime. False means the test
/// was inconclusive.
bool coprime_in_variable(const MultiPoly& f, const MultiPoly& g, std::size_t var);

}  // namespace regtensor

#endif  // REGTENSOR_MODIMAGE_HPP
