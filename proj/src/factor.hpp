#ifndef REGTENSOR_FACTOR_HPP
#define REGTENSOR_FACTOR_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cert.hpp"
#include "tower.hpp"

namespace regtensor {

using FpPoly = UniPoly<Scalar>;

/// Squarefree, distinct-degree and equal-degree factorization over F_p.
/// Factors are monic and sorted by (degree, coefficients); the leading
/// coefficient of f is dropped.
std::vector<std::pair<FpPoly, unsigned>> factor_finite_field(const FpPoly& f);

/// Irreducibility over F_q by gcd(f, X^{q^j} - X) = 1 for j <= deg/2.
bool finite_field_irreducible(const FpPoly& f);

/// p-th roots inside a field presented as a triangular algebra over
/// F0 = F_p(T). Writing r = sum r_g G_g over the monomial basis, r^p = c is a
/// linear system over F0 after undoing Frobenius on the coefficients.
struct PthRootSystem {
    Matrix<RatFunc> m;       // columns: un-Frobenius expansions of G_g^p
    std::vector<RatFunc> v;  // un-Frobenius expansion of c
};
PthRootSystem pth_root_system(const AlgebraPtr& field, const AlgElem& c);

struct PthRoot {
    std::optional<AlgElem> root;
    /// When there is no root: y with y^T m = 0 and y^T v != 0.
    std::vector<RatFunc> obstruction;
};
PthRoot pth_root(const AlgebraPtr& field, const AlgElem& c);

/// Decomposition of a rational function h over the p-th power subfield:
/// h = sum_alpha h_alpha(T^p) T^alpha; returns the h_alpha (with T^p
/// renamed back to T), indexed in mixed radix p with the first variable
/// least significant.
std::vector<RatFunc> frobenius_decompose(const RatFunc& h);

/// X^{p^m} - a over a field of characteristic p: irreducible iff a is not
/// a p-th power there.
struct BinomialResult {
    bool irreducible = false;
    std::optional<IrreducibilityCert> cert;
    std::optional<AlgElem> root;  // r with r^p = a when reducible
};
BinomialResult binomial_irreducible(std::uint64_t p, unsigned m, const AlgElem& a, const AlgebraPtr& field);
BinomialResult binomial_irreducible(std::uint64_t p, unsigned m, const AlgElem& a, const FieldTower& tower);

/// sqrt(a) in Q(sqrt d_1, .., sqrt d_n): the subset T with a / prod_{T} d_i a
/// rational square q^2, giving sqrt(a) = q prod_{T} sqrt d_i.
struct MultiquadraticRoot {
    mpq_class q;
    std::vector<std::size_t> subset;
};
std::optional<MultiquadraticRoot> sqrt_in_multiquadratic(const mpq_class& a, const std::vector<mpz_class>& gens);

/// Squarefree part s of a nonzero rational a, with a = s * r^2.
std::pair<mpz_class, mpq_class> squarefree_part(const mpq_class& a);

/// A field given as a triangular algebra. Q-towers of quadratics with
/// rational coefficients expose their radicands.
struct MultiquadraticData {
    std::vector<mpz_class> radicands;   // d_j
    std::vector<AlgElem> sqrt_elems;    // sqrt(d_j) as field elements
};
std::optional<MultiquadraticData> multiquadratic_data(const AlgebraPtr& field);

/// sqrt of an element of the field when it can be decided: rational
/// elements of multiquadratic fields, elements of F0 = K(T) in odd or zero
/// characteristic, and prime fields.
struct SqrtResult {
    bool decided = false;
    std::optional<AlgElem> root;
    std::string reason;
    IrreducibilityCert cert;  // filled when decided and no root exists
};
SqrtResult sqrt_in_field(const AlgebraPtr& field, const AlgElem& a);

struct QuadraticFactors {
    bool irreducible = false;
    std::vector<AlgPoly> factors;  // linear factors when split
    std::optional<IrreducibilityCert> cert;
};
/// X^2 + bX + c over a supported field, characteristic != 2 or a finite
/// field. Throws UnsupportedField.
QuadraticFactors factor_quadratic(const AlgPoly& f, const AlgebraPtr& field);

/// Factorization of a monic polynomial over a field given as a triangular
/// algebra, within the oracle's coverage.
struct Factorization {
    bool supported = false;
    std::string reason;
    std::vector<std::pair<AlgPoly, unsigned>> factors;
    std::optional<IrreducibilityCert> cert;  // set when f is irreducible
};
Factorization factor_over(const AlgebraPtr& field, const AlgPoly& f);

struct IrreducibilityResult {
    enum class Status { Irreducible, Reducible, Uncertifiable };
    Status status = Status::Uncertifiable;
    std::optional<IrreducibilityCert> cert;
    std::optional<AlgPoly> factor;
    std::string reason;
};
/// The registry entry point used by FieldTower::adjoin_root; f has
/// coefficients in the tower's field.
IrreducibilityResult certify_irreducible(const FieldTower& tower, const AlgPoly& f);
IrreducibilityResult certify_irreducible(const AlgebraPtr& field, const AlgPoly& f);

/// Re-checks a certificate from its witness data alone.
bool replay_certificate(const AlgebraPtr& field, const AlgPoly& f, const IrreducibilityCert& cert);

}  // namespace regtensor

#endif  // REGTENSOR_FACTOR_HPP
