#ifndef REGTENSOR_TOWER_HPP
#define REGTENSOR_TOWER_HPP

#include <optional>
#include <string>
#include <vector>

#include "algebra.hpp"
#include "cert.hpp"
#include "unipoly.hpp"

namespace regtensor {

using AlgPoly = UniPoly<AlgElem>;

struct Step {
    enum class Kind { Transcendental, Algebraic };
    Kind kind = Kind::Transcendental;
    std::string name;
    /// Image of the generator inside the ambient rational function field, if any.
    std::optional<RatFunc> image;
    /// Algebraic steps: index of the generator in the tower's algebra.
    std::size_t gen_index = 0;
    std::optional<IrreducibilityCert> cert;
};

enum class Shape { SeparableOnly, InsepOnly, SeparableThenInsep, Unsplit };

std::string_view shape_name(Shape s);

struct InsepGenerator {
    std::size_t step = 0;
    std::string name;
    unsigned m = 0;
    /// The generator's p^m-th power, an element of the algebra prefix below it.
    AlgElem a;
};

struct SeparabilityProfile {
    Shape shape = Shape::SeparableOnly;
    std::uint64_t separable_degree = 1;  // product of separable algebraic degrees
    std::size_t transcendentals = 0;
    unsigned insep_exponent = 0;         // sum of the m over purely inseparable steps
    std::vector<InsepGenerator> insep;
    std::optional<std::size_t> offending_step;
    std::string reason;
};

/// A finitely generated extension of a prime field presented as a tower of
/// adjunctions. Transcendental generators form the rational function field
/// F0; algebraic generators form a triangular algebra over F0 that is a
/// field because each relation carries an irreducibility certificate.
class FieldTower {
public:
    static FieldTower prime(PrimeField field);

    /// Ambient rational function field F_p(vars) that every step image lives in.
    FieldTower with_ambient(const std::vector<std::string>& vars) const;

    FieldTower adjoin_transcendental(const std::string& name, std::optional<RatFunc> image = std::nullopt) const;
    /// Certifies irreducibility with the oracle registry first. Throws
    /// ReducibleMinPoly or UncertifiableIrreducibility.
    FieldTower adjoin_root(const std::string& name, const AlgPoly& minpoly,
                           std::optional<RatFunc> image = std::nullopt) const;
    /// Trusts the supplied certificate; the caller has verified it.
    FieldTower adjoin_certified(const std::string& name, const AlgPoly& minpoly, IrreducibilityCert cert,
                                std::optional<RatFunc> image = std::nullopt) const;

    const PrimeField& prime_field() const { return field_; }
    std::uint64_t characteristic() const { return field_.characteristic(); }
    const RingPtr& ring() const { return ring_; }
    const AlgebraPtr& algebra() const { return alg_; }
    const std::vector<Step>& steps() const { return steps_; }
    const std::optional<RingPtr>& ambient() const { return ambient_; }

    /// Number of algebraic generators among the first n steps.
    std::size_t algebraic_before(std::size_t n) const;
    /// The field generated by the first n steps, as a prefix of the algebra
    /// (over the full F0).
    AlgebraPtr prefix_algebra(std::size_t n) const;
    FieldTower prefix(std::size_t n) const;
    /// True when `other` is literally the first steps of this tower.
    bool has_prefix(const FieldTower& other) const;

    std::optional<std::uint64_t> degree(std::size_t over = 0) const;
    std::size_t td(std::size_t over = 0) const;

    AlgElem one() const { return alg_->one(); }
    AlgElem zero() const { return alg_->zero(); }
    /// Generator of a named step (transcendental or algebraic).
    AlgElem generator(const std::string& name) const;
    std::optional<std::size_t> step_index(const std::string& name) const;
    bool is_transcendental_var(const std::string& name) const;

    /// Monic minimal polynomial of elem over the subfield generated by the
    /// first `over` steps. Throws InfiniteDegree when that extension is not
    /// finite.
    AlgPoly minpoly_of_element(const AlgElem& elem, std::size_t over) const;

    /// Relation of an algebraic step as a polynomial over its prefix.
    AlgPoly minpoly(std::size_t step) const;

    SeparabilityProfile classify(std::size_t over) const;

    std::string to_string() const;

private:
    PrimeField field_ = PrimeField::rationals();
    RingPtr ring_;
    AlgebraPtr alg_;
    std::vector<Step> steps_;
    std::optional<RingPtr> ambient_;
};

/// Renders an element; when the tower has an ambient form every generator is
/// replaced by its ambient image.
std::string render_element(const FieldTower& tower, const AlgElem& e);

/// Image of a tower element in the ambient field. Throws AmbientUnavailable.
RatFunc ambient_image(const FieldTower& tower, const AlgElem& e);

}  // namespace regtensor

#endif  // REGTENSOR_TOWER_HPP
