#ifndef REGTENSOR_MULTIPOLY_HPP
#define REGTENSOR_MULTIPOLY_HPP

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "scalar.hpp"

namespace regtensor {

/// Coefficient field plus an ordered list of variable names.
struct PolyRing {
    PrimeField field;
    std::vector<std::string> vars;

    std::optional<std::size_t> index_of(const std::string& name) const;
    std::size_t arity() const { return vars.size(); }
};

using RingPtr = std::shared_ptr<const PolyRing>;

RingPtr make_ring(PrimeField field, std::vector<std::string> vars);
bool same_ring(const RingPtr& a, const RingPtr& b);

using Exponents = std::vector<std::uint32_t>;

/// Graded lexicographic order, first variable most significant.
bool grlex_less(const Exponents& a, const Exponents& b);

/// Sparse multivariate polynomial. Terms are kept sorted by decreasing grlex
/// order with no zero coefficients, so equal polynomials compare equal
/// term by term.
class MultiPoly {
public:
    struct Term {
        Exponents exp;
        Scalar coef;
    };

    explicit MultiPoly(RingPtr ring) : ring_(std::move(ring)) {}

    static MultiPoly constant(RingPtr ring, const Scalar& c);
    static MultiPoly from_int(RingPtr ring, long long c);
    static MultiPoly variable(RingPtr ring, std::size_t index);
    static MultiPoly monomial(RingPtr ring, Exponents exp, const Scalar& c);
    /// Builds from unsorted terms, combining duplicates.
    static MultiPoly from_terms(RingPtr ring, std::vector<Term> terms);
    /// Terms must already be strictly decreasing in grlex with nonzero coefficients.
    static MultiPoly from_sorted(RingPtr ring, std::vector<Term> terms);

    const RingPtr& ring() const { return ring_; }
    const std::vector<Term>& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    bool is_one() const;
    Scalar constant_value() const;
    Scalar constant_term() const;
    const Term& leading() const;
    Scalar leading_coef() const { return leading().coef; }

    std::uint32_t total_degree() const;
    std::uint32_t degree_in(std::size_t var) const;
    bool involves(std::size_t var) const;
    std::vector<std::size_t> variables_used() const;

    MultiPoly operator-() const;
    friend MultiPoly operator+(const MultiPoly& a, const MultiPoly& b);
    friend MultiPoly operator-(const MultiPoly& a, const MultiPoly& b);
    friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
    MultiPoly scaled(const Scalar& c) const;
    MultiPoly times_monomial(const Exponents& exp) const;
    MultiPoly pow(std::uint64_t e) const;

    /// Exact quotient; throws InexactDivision when g does not divide *this.
    MultiPoly exact_div(const MultiPoly& g) const;
    std::optional<MultiPoly> try_div(const MultiPoly& g) const;

    /// Coefficients with respect to one variable; entry j multiplies var^j.
    std::vector<MultiPoly> coefficients_in(std::size_t var) const;
    static MultiPoly from_coefficients_in(RingPtr ring, std::size_t var, const std::vector<MultiPoly>& coeffs);

    MultiPoly derivative(std::size_t var) const;
    MultiPoly substitute(std::size_t var, const MultiPoly& value) const;
    Scalar evaluate(const std::vector<Scalar>& point) const;

    /// Divides by the leading coefficient.
    MultiPoly monic() const;

    /// Re-expresses in another ring whose variable list contains every
    /// variable this polynomial uses (matched by name).
    MultiPoly in_ring(const RingPtr& target) const;

    MultiPoly map_exponents(const std::function<Exponents(const Exponents&)>& f) const;

    std::string to_string() const;

    friend bool operator==(const MultiPoly& a, const MultiPoly& b);

private:
    void check_ring(const MultiPoly& other) const;

    RingPtr ring_;
    std::vector<Term> terms_;
};

/// Greatest common divisor with leading coefficient 1; gcd(0, 0) = 0.
/// Computed by primitive remainder sequences in the last occurring variable,
/// recursing into the content.
MultiPoly gcd(const MultiPoly& f, const MultiPoly& g);

/// Content of f viewed as a polynomial in `var` (gcd of its coefficients).
MultiPoly content_in(const MultiPoly& f, std::size_t var);

std::string format_monomial(const PolyRing& ring, const Exponents& exp);

}  // namespace regtensor

#endif  // REGTENSOR_MULTIPOLY_HPP
