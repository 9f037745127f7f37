#ifndef REGTENSOR_TENSOR_HPP
#define REGTENSOR_TENSOR_HPP

#include <optional>
#include <string>
#include <vector>

#include "insep.hpp"
#include "tower.hpp"

namespace regtensor {

/// K (x)_k L as the L-algebra L[X_1..X_m]/(f_1..f_m), the f_j being K's tower
/// relations above k with coefficients pushed into L. The underlying
/// triangular algebra has a scalar part S: L's own algebra over F0, or, when
/// K is purely inseparable over k and both towers have ambient forms, the
/// ambient field F with L embedded in it. Elements are vectors of length
/// [K:k] over S; every computation keeps L-rational inputs L-rational.
struct TensorAlgebra {
    FieldTower k;
    FieldTower K;
    FieldTower L;
    std::size_t base_len = 0;
    bool ambient = false;
    std::optional<ContextPtr> ctx;  // set in ambient mode
    AlgebraPtr scalars;             // S
    AlgebraPtr alg;                 // S with the X_j adjoined
    std::vector<std::string> names;
    std::vector<std::size_t> k_steps;  // K's algebraic steps above k, in order

    /// [K:k], the dimension over L.
    std::size_t dim() const { return alg->dim() / scalars->dim(); }
    /// Coordinates of an element over S, one per X-monomial.
    std::vector<AlgElem> coords(const AlgElem& a) const;
    AlgElem from_coords(const std::vector<AlgElem>& v) const;
    /// An element of L (a tower element of L) as a scalar of A.
    AlgElem scalar(const AlgElem& l) const;
    AlgElem x(std::size_t j) const;
    std::string render(const AlgElem& a) const;
    std::string render_scalar(const AlgElem& s) const;
};

/// Throws BaseMismatch unless both towers start with the first `base_len`
/// steps of each other, and NotAlgebraic when K has transcendental steps
/// above k.
TensorAlgebra build_tensor(const FieldTower& K, const FieldTower& L, std::size_t base_len);

struct LocalFactor {
    explicit LocalFactor(AlgElem e) : idempotent(std::move(e)) {}

    std::string residue;                   // description of the residue field
    std::size_t residue_degree = 1;        // [kappa:L]
    std::optional<std::uint64_t> residue_degree_over_k;
    std::vector<unsigned> multiplicities;  // per relation, of the chosen factor
    std::size_t length_dim = 0;            // dim_L of the local factor
    std::vector<AlgElem> max_ideal;        // L-basis of the maximal ideal
    std::size_t nilpotency_index = 1;      // least s with m^s = 0
    std::size_t edim = 0;                  // dim_kappa m/m^2
    AlgElem idempotent;

    bool is_field() const { return edim == 0; }
};

struct Decomposition {
    std::vector<LocalFactor> factors;
    std::vector<AlgElem> nilradical;  // L-basis, last nonzero coordinate 1

    bool is_reduced() const { return nilradical.empty(); }
    bool is_domain() const { return factors.size() == 1 && factors[0].is_field(); }
    bool is_field() const { return is_domain(); }
    bool regular() const;
};

/// Stepwise factorization of the relations over the residue fields met so
/// far. Throws OracleUnavailable when a relation is outside the oracle, and
/// InternalInconsistency when a verification fails.
Decomposition decompose_local(const TensorAlgebra& a);

/// Re-checks e^2 = e, e_i e_j = 0, sum e = 1 and nu^dim = 0 by arithmetic in A.
struct StructureCheck {
    bool idempotents_ok = false;
    bool nilradical_ok = false;
    bool dimensions_ok = false;
    std::string detail;
};
StructureCheck verify_structure(const TensorAlgebra& a, const Decomposition& d);

bool regular_direct(const TensorAlgebra& a);

}  // namespace regtensor

#endif  // REGTENSOR_TENSOR_HPP
