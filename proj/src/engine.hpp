#ifndef REGTENSOR_ENGINE_HPP
#define REGTENSOR_ENGINE_HPP

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "tensor.hpp"
#include "tower.hpp"

namespace regtensor {

enum class Answer { Yes, No, HypothesisNotVerified };

/// "regular", "not_regular", "hypothesis_not_verified".
std::string_view answer_name(Answer a);

struct Rule {
    std::string name;
    std::string statement;
};

/// [k(S'):k] against [L(S'):L].
struct DegreeWitness {
    std::vector<std::string> subset;
    std::uint64_t deg_k = 0;
    std::uint64_t deg_l = 0;
    std::string source;  // "ambient" or "tower"
};

/// K_i meet L(S') against k(S'), as subfields of the ambient field over its
/// p-power base.
struct IntersectionWitness {
    std::vector<std::string> subset;
    std::vector<std::string> meet_basis;
    std::vector<std::string> k_basis;
    bool equal = false;
};

struct NilpotentWitness {
    std::string element;
    std::size_t nilpotency_index = 0;
    std::size_t edim = 0;
    std::size_t krull_dim = 0;
};

struct IdempotentWitness {
    std::vector<std::string> idempotents;
    std::vector<std::string> residue_fields;
    std::vector<std::uint64_t> residue_degrees;  // over k when finite, else over L
    bool over_k = false;
};

struct SeparabilityWitness {
    std::string field;
    std::string shape;
    std::string step;
    std::string reason;
};

/// A residue-field pair checked for a descriptor query.
struct FiberWitness {
    std::string first;
    std::string second;
    Answer answer = Answer::HypothesisNotVerified;
    std::string rule;
};

using Witness = std::variant<DegreeWitness, IntersectionWitness, NilpotentWitness, IdempotentWitness,
                             SeparabilityWitness, FiberWitness>;

struct Verdict {
    Answer regular = Answer::HypothesisNotVerified;
    bool noetherian = false;
    std::string noetherian_rule;
    std::optional<std::size_t> krull_dim;
    std::vector<Rule> rules;
    std::vector<Witness> witnesses;
    std::vector<std::string> assumptions;
    std::vector<std::string> notes;
    /// Assertion levels of the fiber chain that hold ("i".."v"), for
    /// descriptor queries.
    std::vector<std::string> established;
};

/// A named field over the shared base, which is its first `base_len` steps.
struct NamedField {
    std::string name;
    FieldTower tower;
    std::size_t base_len = 0;
};

std::size_t td_over_base(const NamedField& f);

/// Purely inseparable generators S of K over k with K = K_s K_i certified
/// by the tower shape: degrees at S' = S decide; a failing S is shrunk
/// greedily. Shapes without a certified split give HypothesisNotVerified.
Verdict check_theorem2(const NamedField& K, const NamedField& L);

/// K_i meet L(S') against k(S') for the generators of S with the given
/// indices. Throws AmbientUnavailable.
IntersectionWitness check_condition_v(const NamedField& K, const NamedField& L, const std::vector<std::size_t>& subset);

/// K meet L against the base k, inside one ambient context.
struct FieldIntersection {
    std::vector<std::string> meet_basis;
    std::vector<std::string> base_basis;
    bool equals_base = false;
    bool equals_first = false;
    bool equals_second = false;
};
FieldIntersection intersect_fields(const NamedField& K, const NamedField& L);

/// The verdict obtained from the intersection condition over every subset
/// of S instead of the degree condition.
Answer theorem2_by_intersections(const NamedField& K, const NamedField& L);

/// K separable over k. Throws SeparabilityNotCertified otherwise.
Verdict check_lemma1(const NamedField& K, const NamedField& L);

Verdict check_self_tensor(const NamedField& K);

/// K separable algebraic over k: decomposes K (x) L. For multiquadratic
/// fields over Q also checks the factor count against [K meet L : Q].
Verdict check_separable_algebraic(const NamedField& K, const NamedField& L);

std::size_t dim_tensor(const NamedField& K, const NamedField& L);

/// Picks the applicable rule, then cross-checks against the explicit tensor
/// algebra when one side is algebraic. Throws ConsistencyFailure on
/// disagreement.
Verdict decide_regular(const NamedField& K, const NamedField& L);

struct CrossCheck {
    Verdict engine;
    bool constructible = false;
    bool direct = false;
    bool agree = true;
};
/// Engine verdict and the direct structural verdict side by side.
CrossCheck cross_validate(const NamedField& K, const NamedField& L);

struct AlgebraDescriptor {
    std::string name;
    std::optional<bool> regular;
    std::optional<bool> residually_separable;
    std::optional<bool> geometrically_regular;
    std::optional<bool> finitely_generated;
    /// Declares that tensor products with this algebra are Noetherian.
    std::optional<bool> tensor_noetherian;
    std::vector<NamedField> residue_fields;
};

/// Fiber-chain reasoning for k-algebras known through descriptors.
/// `assumed` lists assertion levels the caller declares. Throws
/// InsufficientDescriptors when nothing can be established.
Verdict check_theorem3(const AlgebraDescriptor& a, const AlgebraDescriptor& b,
                       const std::vector<std::string>& assumed = {});

}  // namespace regtensor

#endif  // REGTENSOR_ENGINE_HPP
