#ifndef REGTENSOR_CERT_HPP
#define REGTENSOR_CERT_HPP

#include <string>
#include <string_view>
#include <vector>

#include "ratfunc.hpp"

namespace regtensor {

enum class CertMethod { FiniteFieldFactorization, BinomialCriterion, QuadraticRootSearch, DegreeOne };

std::string_view cert_method_name(CertMethod m);

/// Evidence that a polynomial is irreducible over a field. The payload is
/// enough for an independent replay without repeating the search.
struct IrreducibilityCert {
    CertMethod method = CertMethod::DegreeOne;
    std::string witness;
    /// Which field family the witness refers to, e.g. "multiquadratic".
    std::string scope;

    // BinomialCriterion: X^{p^m} - a, and a vector y with y^T M = 0 and
    // y^T v != 0 for the p-th root system (M, v) of a.
    std::uint64_t p = 0;
    unsigned m = 0;
    std::vector<RatFunc> obstruction;

    // QuadraticRootSearch over Q: the discriminant's rational value and the
    // generator radicands whose subset products were checked.
    mpq_class discriminant;
    std::vector<mpz_class> radicands;

    // FiniteFieldFactorization: the field order the polynomial lives over.
    std::uint64_t field_order = 0;
};

}  // namespace regtensor

#endif  // REGTENSOR_CERT_HPP
