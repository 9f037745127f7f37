#ifndef REGTENSOR_RATFUNC_HPP
#define REGTENSOR_RATFUNC_HPP

#include <optional>
#include <string>

#include "multipoly.hpp"

namespace regtensor {

/// Element of the rational function field over a PolyRing. Always stored
/// with gcd(num, den) = 1 and den having leading coefficient 1.
class RatFunc {
public:
    explicit RatFunc(RingPtr ring);
    explicit RatFunc(MultiPoly num);
    RatFunc(MultiPoly num, MultiPoly den);

    static RatFunc from_int(RingPtr ring, long long c);
    static RatFunc constant(RingPtr ring, const Scalar& c);
    static RatFunc variable(RingPtr ring, std::size_t index);

    const RingPtr& ring() const { return num_.ring(); }
    std::uint64_t characteristic() const { return ring()->field.characteristic(); }
    const MultiPoly& num() const { return num_; }
    const MultiPoly& den() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const { return num_.is_one() && den_.is_one(); }
    bool is_polynomial() const { return den_.is_one(); }
    bool is_constant() const { return num_.is_constant() && den_.is_constant(); }

    RatFunc operator-() const;
    friend RatFunc operator+(const RatFunc& a, const RatFunc& b);
    friend RatFunc operator-(const RatFunc& a, const RatFunc& b);
    friend RatFunc operator*(const RatFunc& a, const RatFunc& b);
    friend RatFunc operator/(const RatFunc& a, const RatFunc& b);
    RatFunc& operator+=(const RatFunc& b) { return *this = *this + b; }
    RatFunc& operator-=(const RatFunc& b) { return *this = *this - b; }
    RatFunc& operator*=(const RatFunc& b) { return *this = *this * b; }

    RatFunc scaled(const Scalar& c) const;
    RatFunc inverse() const;
    RatFunc pow(std::uint64_t e) const;

    /// A p-th root when the coefficient field is F_p and one exists: after
    /// normalization both parts must have every exponent divisible by p.
    std::optional<RatFunc> pth_root() const;

    /// A square root, for coefficient fields of characteristic != 2.
    std::optional<RatFunc> sqrt() const;

    RatFunc in_ring(const RingPtr& target) const;

    std::string to_string() const;

    friend bool operator==(const RatFunc& a, const RatFunc& b) { return a.num_ == b.num_ && a.den_ == b.den_; }

private:
    struct Normalized {};
    RatFunc(MultiPoly num, MultiPoly den, Normalized) : num_(std::move(num)), den_(std::move(den)) {}
    static RatFunc make(MultiPoly num, MultiPoly den);
    /// Caller guarantees gcd(num, den) = 1 and den != 0.
    static RatFunc make_coprime(MultiPoly num, MultiPoly den);

    MultiPoly num_;
    MultiPoly den_;
};

/// Square root of a polynomial by leading-term recursion; nullopt when f is
/// not a perfect square. Characteristic must not be 2.
std::optional<MultiPoly> poly_sqrt(const MultiPoly& f);

/// Writes h = sum_alpha h_alpha(T^q) T^alpha over F_p with q a power of p, so
/// that h_alpha has its variables standing for T^q. Indexed in mixed radix q,
/// first variable least significant.
std::vector<RatFunc> split_by_power(const RatFunc& h, std::uint64_t q);

}  // namespace regtensor

#endif  // REGTENSOR_RATFUNC_HPP
