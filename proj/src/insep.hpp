#ifndef REGTENSOR_INSEP_HPP
#define REGTENSOR_INSEP_HPP

#include <memory>
#include <string>
#include <vector>

#include "linalg.hpp"
#include "ratfunc.hpp"
#include "tower.hpp"

namespace regtensor {

/// F = F_p(x_1..x_n) as a vector space of dimension p^{en} over
/// B0 = F_p(x_1^{p^e}, .., x_n^{p^e}) with basis the monomials x^alpha,
/// 0 <= alpha_i < p^e.
class AmbientContext {
public:
    AmbientContext(PrimeField field, std::vector<std::string> vars, unsigned e);

    std::uint64_t characteristic() const { return field_.characteristic(); }
    unsigned exponent() const { return e_; }
    std::uint64_t q() const { return q_; }
    const RingPtr& ring() const { return ring_; }
    /// Coefficient ring: variable x stands for x^{p^e}.
    const RingPtr& base_ring() const { return base_; }
    std::size_t size() const { return size_; }
    const std::vector<std::string>& vars() const { return ring_->vars; }

    std::vector<RatFunc> decompose(const RatFunc& h) const;
    RatFunc compose(const std::vector<RatFunc>& coords) const;
    /// A B0 element written in the ambient variables.
    RatFunc lift(const RatFunc& b) const;
    std::string monomial(std::size_t index) const;

private:
    PrimeField field_;
    unsigned e_;
    std::uint64_t q_;
    RingPtr ring_;
    RingPtr base_;
    std::size_t size_;
};

using ContextPtr = std::shared_ptr<const AmbientContext>;

ContextPtr make_context(PrimeField field, std::vector<std::string> vars, unsigned e);

/// A subfield of F containing B0, stored as a B0-subspace in reduced row
/// echelon form.
class SubfieldBasis {
public:
    SubfieldBasis(ContextPtr ctx, Matrix<RatFunc> rows);

    const ContextPtr& context() const { return ctx_; }
    std::size_t dim() const { return rows_.size(); }
    const Matrix<RatFunc>& rows() const { return rows_; }
    /// Basis elements as rational functions in F.
    std::vector<RatFunc> elements() const;

    friend bool operator==(const SubfieldBasis& a, const SubfieldBasis& b);

private:
    ContextPtr ctx_;
    Matrix<RatFunc> rows_;
};

/// Smallest subfield containing B0 and the generators.
SubfieldBasis subalgebra_closure(const ContextPtr& ctx, const std::vector<RatFunc>& gens);
/// Adjoins further generators to a subfield.
SubfieldBasis extend(const SubfieldBasis& b, const std::vector<RatFunc>& gens);
SubfieldBasis full_field(const ContextPtr& ctx);

bool member(const RatFunc& elem, const SubfieldBasis& b);
bool contains(const SubfieldBasis& large, const SubfieldBasis& small);
SubfieldBasis intersect(const SubfieldBasis& a, const SubfieldBasis& b);
/// dim(large) / dim(small). Throws NotASubfield unless small is contained in large.
std::uint64_t relative_degree(const SubfieldBasis& small, const SubfieldBasis& large);

/// Where the generators of a tower live in F: transcendental steps must map
/// to pure powers x_i^{p^{e_i}} of distinct variables and algebraic steps
/// need images.
struct AmbientShape {
    std::vector<std::string> vars;        // ambient variables the tower involves
    std::vector<unsigned> var_exponent;   // e_i with x_i^{p^{e_i}} a transcendental image
    std::vector<std::string> step_vars;   // per transcendental step, its variable
    unsigned exponent = 0;                // max e_i
};
/// Throws AmbientUnavailable when the tower has no usable ambient form.
AmbientShape ambient_shape(const FieldTower& t);

/// Generators of the tower's field as elements of F (transcendental images
/// and algebraic images), ready for subalgebra_closure.
std::vector<RatFunc> ambient_generators(const FieldTower& t, std::size_t steps);

/// Context covering the given towers: their variables and the largest
/// exponent among their transcendental images (at least `min_e`).
ContextPtr context_for(const std::vector<const FieldTower*>& towers, unsigned min_e = 0);

/// The subfield generated by the first `steps` steps of t, together with B0.
SubfieldBasis field_basis(const ContextPtr& ctx, const FieldTower& t, std::size_t steps);

/// Tower element with the given ambient image. Throws NotInField when h is
/// not in the tower's field.
AlgElem tower_element(const FieldTower& t, const RatFunc& h);

/// Least m >= 1 with h^{p^m} in the tower's field, and that power as a tower
/// element. Throws NotAlgebraic when h involves variables outside the tower
/// and InvalidArgument when h already lies in the field.
struct InsepData {
    unsigned m = 0;
    AlgElem a;
};
InsepData insep_data(const FieldTower& t, const RatFunc& h);

/// Tower with a purely inseparable generator h adjoined, named by its text.
FieldTower adjoin_insep(const FieldTower& t, const RatFunc& h, const std::string& name);

}  // namespace regtensor

#endif  // REGTENSOR_INSEP_HPP
