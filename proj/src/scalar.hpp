#ifndef REGTENSOR_SCALAR_HPP
#define REGTENSOR_SCALAR_HPP

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <variant>

namespace regtensor {

class Scalar;

/// The prime subfield of the base field: either Q (characteristic 0) or F_p.
class PrimeField {
public:
    static PrimeField rationals() { return PrimeField(0); }
    /// Throws InvalidArgument unless p is prime.
    static PrimeField fp(std::uint64_t p);

    std::uint64_t characteristic() const { return p_; }
    bool is_rational() const { return p_ == 0; }

    Scalar zero() const;
    Scalar one() const;
    Scalar from_int(long long v) const;

    std::string to_string() const;

    friend bool operator==(const PrimeField&, const PrimeField&) = default;

private:
    explicit PrimeField(std::uint64_t p) : p_(p) {}
    std::uint64_t p_;
};

bool is_prime(std::uint64_t n);

/// An exact element of Q or of F_p. Values are immutable; every operation
/// returns a fresh value and mixing moduli throws ModulusMismatch.
class Scalar {
public:
    struct Mod {
        std::uint64_t value;
        std::uint64_t modulus;
    };

    Scalar() : v_(mpq_class(0)) {}
    explicit Scalar(mpq_class q);
    Scalar(std::uint64_t value, std::uint64_t modulus);

    static Scalar rational(long long num, long long den = 1);

    bool is_rational() const { return std::holds_alternative<mpq_class>(v_); }
    std::uint64_t characteristic() const;
    PrimeField field() const;

    const mpq_class& as_rational() const;
    std::uint64_t residue() const;

    bool is_zero() const;
    bool is_one() const;

    Scalar operator-() const;
    friend Scalar operator+(const Scalar& a, const Scalar& b);
    friend Scalar operator-(const Scalar& a, const Scalar& b);
    friend Scalar operator*(const Scalar& a, const Scalar& b);
    friend Scalar operator/(const Scalar& a, const Scalar& b);
    Scalar& operator+=(const Scalar& b) { return *this = *this + b; }
    Scalar& operator-=(const Scalar& b) { return *this = *this - b; }
    Scalar& operator*=(const Scalar& b) { return *this = *this * b; }

    Scalar inverse() const;
    Scalar pow(std::uint64_t e) const;
    /// a^p for a in F_p. Throws CharMismatch for rationals.
    Scalar frobenius() const;

    /// Square root inside the prime field, if one exists.
    std::optional<Scalar> sqrt() const;

    friend bool operator==(const Scalar& a, const Scalar& b);

    std::string to_string() const;

private:
    std::variant<mpq_class, Mod> v_;
};

}  // namespace regtensor

#endif  // REGTENSOR_SCALAR_HPP
