#ifndef REGTENSOR_ALGEBRA_HPP
#define REGTENSOR_ALGEBRA_HPP

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "linalg.hpp"
#include "ratfunc.hpp"

namespace regtensor {

class TriAlgebra;
using AlgebraPtr = std::shared_ptr<const TriAlgebra>;

/// Element of a triangular algebra: coordinates over F0 with respect to the
/// monomial basis, first generator least significant.
class AlgElem {
public:
    AlgElem(AlgebraPtr alg, std::vector<RatFunc> coords);

    const AlgebraPtr& algebra() const { return alg_; }
    const std::vector<RatFunc>& coords() const { return c_; }

    bool is_zero() const;
    bool is_one() const;
    /// True when only the constant coordinate is nonzero.
    bool in_base() const;
    std::uint64_t characteristic() const;

    AlgElem operator-() const;
    friend AlgElem operator+(const AlgElem& a, const AlgElem& b);
    friend AlgElem operator-(const AlgElem& a, const AlgElem& b);
    friend AlgElem operator*(const AlgElem& a, const AlgElem& b);
    AlgElem& operator+=(const AlgElem& b) { return *this = *this + b; }
    AlgElem& operator-=(const AlgElem& b) { return *this = *this - b; }
    AlgElem& operator*=(const AlgElem& b) { return *this = *this * b; }
    AlgElem scaled(const RatFunc& s) const;

    /// Throws DivisionByZero when the element is a zero divisor.
    AlgElem inverse() const;
    std::optional<AlgElem> try_inverse() const;
    AlgElem pow(std::uint64_t e) const;

    std::string to_string() const;

    friend bool operator==(const AlgElem& a, const AlgElem& b);

private:
    AlgebraPtr alg_;
    std::vector<RatFunc> c_;
};

/// F0[X1..Xm]/(f1, .., fm) where F0 is the fraction field of a polynomial
/// ring and each f_i is monic in X_i with coefficients in the algebra on
/// X1..X_{i-1}. Immutable; built one generator at a time.
class TriAlgebra : public std::enable_shared_from_this<TriAlgebra> {
public:
    static AlgebraPtr base(RingPtr ring);

    /// Adds a generator with monic relation X^d + sum_j coeffs[j] X^j,
    /// d = coeffs.size(), coefficients in this algebra.
    AlgebraPtr adjoin(const std::string& name, const std::vector<AlgElem>& coeffs) const;

    const RingPtr& ring() const { return ring_; }
    std::size_t dim() const { return dim_; }
    std::size_t num_gens() const { return chain_.size(); }
    const std::string& gen_name(std::size_t i) const { return node(i).name_; }
    std::size_t degree(std::size_t i) const { return node(i).coeffs_.size(); }
    /// Relation coefficients of generator i, as elements of prefix(i).
    const std::vector<AlgElem>& relation(std::size_t i) const { return node(i).coeffs_; }
    std::size_t stride(std::size_t i) const { return node(i).parent_->dim_; }

    /// The subalgebra generated by the first n generators.
    AlgebraPtr prefix(std::size_t n) const;
    AlgebraPtr self() const { return shared_from_this(); }

    /// The same presentation over another ring containing all variables used.
    AlgebraPtr in_ring(const RingPtr& target) const;

    AlgElem zero() const;
    AlgElem one() const;
    AlgElem scalar(const RatFunc& c) const;
    AlgElem from_int(long long c) const;
    AlgElem gen(std::size_t i) const;
    AlgElem basis(std::size_t index) const;
    AlgElem element(std::vector<RatFunc> coords) const;
    /// Pads an element of a prefix algebra.
    AlgElem embed(const AlgElem& e) const;
    /// Truncates an element that lies in prefix(n); throws NotInField otherwise.
    AlgElem restrict_to(const AlgElem& e, std::size_t n) const;

    std::vector<std::uint32_t> exponents(std::size_t index) const;
    std::size_t index_of(const std::vector<std::uint32_t>& exps) const;
    std::string monomial_string(std::size_t index) const;

    std::vector<RatFunc> mul(const std::vector<RatFunc>& a, const std::vector<RatFunc>& b) const;
    /// Inverse through extended gcds down the tower; nullopt when a is a zero
    /// divisor that the gcd exposes. Throws DivisionByZero when a prefix is
    /// not a field.
    std::optional<std::vector<RatFunc>> tower_inverse(const std::vector<RatFunc>& a) const;

    /// Column j is (a * basis_j).
    Matrix<RatFunc> mult_matrix(const AlgElem& a) const;

    /// Every relation coefficient and every generator name, for comparison.
    std::string signature() const;

private:
    TriAlgebra() = default;
    const TriAlgebra& node(std::size_t i) const;

    RingPtr ring_;
    std::size_t dim_ = 1;
    AlgebraPtr parent_;
    std::string name_;
    std::vector<AlgElem> coeffs_;
    std::vector<const TriAlgebra*> chain_;  // chain_[i] is the node that introduced generator i
};

}  // namespace regtensor

#endif  // REGTENSOR_ALGEBRA_HPP
