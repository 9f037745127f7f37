#include "scalar.hpp"

#include "error.hpp"

namespace regtensor {

std::string_view error_code_name(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::DivisionByZero: return "DivisionByZero";
        case ErrorCode::ModulusMismatch: return "ModulusMismatch";
        case ErrorCode::InexactDivision: return "InexactDivision";
        case ErrorCode::ArityMismatch: return "ArityMismatch";
        case ErrorCode::BothZero: return "BothZero";
        case ErrorCode::ConstantInput: return "ConstantInput";
        case ErrorCode::ReducibleMinPoly: return "ReducibleMinPoly";
        case ErrorCode::UncertifiableIrreducibility: return "UncertifiableIrreducibility";
        case ErrorCode::InfiniteDegree: return "InfiniteDegree";
        case ErrorCode::NotAlgebraic: return "NotAlgebraic";
        case ErrorCode::NotInField: return "NotInField";
        case ErrorCode::ContextMismatch: return "ContextMismatch";
        case ErrorCode::NotASubfield: return "NotASubfield";
        case ErrorCode::InternalInconsistency: return "InternalInconsistency";
        case ErrorCode::CharMismatch: return "CharMismatch";
        case ErrorCode::BadGenerators: return "BadGenerators";
        case ErrorCode::UnsupportedField: return "UnsupportedField";
        case ErrorCode::BaseMismatch: return "BaseMismatch";
        case ErrorCode::OracleUnavailable: return "OracleUnavailable";
        case ErrorCode::UnsplitTower: return "UnsplitTower";
        case ErrorCode::AmbientUnavailable: return "AmbientUnavailable";
        case ErrorCode::SeparabilityNotCertified: return "SeparabilityNotCertified";
        case ErrorCode::InsufficientDescriptors: return "InsufficientDescriptors";
        case ErrorCode::ConsistencyFailure: return "ConsistencyFailure";
        case ErrorCode::Syntax: return "Syntax";
        case ErrorCode::UnknownName: return "UnknownName";
        case ErrorCode::DuplicateName: return "DuplicateName";
        case ErrorCode::InvalidArgument: return "InvalidArgument";
        case ErrorCode::Io: return "Io";
    }
    return "Unknown";
}

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) return false;
    }
    return true;
}

PrimeField PrimeField::fp(std::uint64_t p) {
    if (!is_prime(p)) fail(ErrorCode::InvalidArgument, "modulus " + std::to_string(p) + " is not prime");
    if (p >= (std::uint64_t{1} << 31)) fail(ErrorCode::InvalidArgument, "modulus too large");
    return PrimeField(p);
}

Scalar PrimeField::zero() const { return from_int(0); }
Scalar PrimeField::one() const { return from_int(1); }

Scalar PrimeField::from_int(long long v) const {
    if (p_ == 0) return Scalar(mpq_class(static_cast<long>(v)));
    long long r = v % static_cast<long long>(p_);
    if (r < 0) r += static_cast<long long>(p_);
    return Scalar(static_cast<std::uint64_t>(r), p_);
}

std::string PrimeField::to_string() const {
    return p_ == 0 ? "Q" : "Fp(" + std::to_string(p_) + ")";
}

Scalar::Scalar(mpq_class q) : v_(std::move(q)) {
    std::get<mpq_class>(v_).canonicalize();
}

Scalar::Scalar(std::uint64_t value, std::uint64_t modulus) : v_(Mod{value % modulus, modulus}) {}

Scalar Scalar::rational(long long num, long long den) {
    if (den == 0) fail(ErrorCode::DivisionByZero, "zero denominator");
    mpq_class q(static_cast<long>(num), static_cast<long>(den));
    return Scalar(q);
}

std::uint64_t Scalar::characteristic() const {
    if (auto* m = std::get_if<Mod>(&v_)) return m->modulus;
    return 0;
}

PrimeField Scalar::field() const {
    if (auto* m = std::get_if<Mod>(&v_)) return PrimeField::fp(m->modulus);
    return PrimeField::rationals();
}

const mpq_class& Scalar::as_rational() const {
    if (auto* q = std::get_if<mpq_class>(&v_)) return *q;
    fail(ErrorCode::CharMismatch, "scalar is not rational");
}

std::uint64_t Scalar::residue() const {
    if (auto* m = std::get_if<Mod>(&v_)) return m->value;
    fail(ErrorCode::CharMismatch, "scalar is not in a prime field of positive characteristic");
}

bool Scalar::is_zero() const {
    if (auto* m = std::get_if<Mod>(&v_)) return m->value == 0;
    return sgn(std::get<mpq_class>(v_)) == 0;
}

bool Scalar::is_one() const {
    if (auto* m = std::get_if<Mod>(&v_)) return m->value == 1 % m->modulus;
    return std::get<mpq_class>(v_) == 1;
}

namespace {

std::uint64_t check_same(const Scalar::Mod& a, const Scalar::Mod& b) {
    if (a.modulus != b.modulus) {
        fail(ErrorCode::ModulusMismatch, "mixed moduli " + std::to_string(a.modulus) + " and " +
                                              std::to_string(b.modulus));
    }
    return a.modulus;
}

template <class OpQ, class OpM>
Scalar binary(const std::variant<mpq_class, Scalar::Mod>& a, const std::variant<mpq_class, Scalar::Mod>& b,
              OpQ opq, OpM opm) {
    if (a.index() != b.index()) fail(ErrorCode::ModulusMismatch, "mixing rational and modular scalars");
    if (a.index() == 0) return Scalar(opq(std::get<0>(a), std::get<0>(b)));
    const auto& ma = std::get<1>(a);
    const auto& mb = std::get<1>(b);
    std::uint64_t p = check_same(ma, mb);
    return Scalar(opm(ma.value, mb.value, p), p);
}

std::uint64_t mod_pow(std::uint64_t base, std::uint64_t e, std::uint64_t p) {
    std::uint64_t result = 1 % p;
    base %= p;
    while (e > 0) {
        if (e & 1) result = result * base % p;
        base = base * base % p;
        e >>= 1;
    }
    return result;
}

}  // namespace

Scalar Scalar::operator-() const {
    if (auto* m = std::get_if<Mod>(&v_)) return Scalar((m->modulus - m->value) % m->modulus, m->modulus);
    return Scalar(mpq_class(-std::get<mpq_class>(v_)));
}

Scalar operator+(const Scalar& a, const Scalar& b) {
    return binary(
        a.v_, b.v_, [](const mpq_class& x, const mpq_class& y) { return mpq_class(x + y); },
        [](std::uint64_t x, std::uint64_t y, std::uint64_t p) { return (x + y) % p; });
}

Scalar operator-(const Scalar& a, const Scalar& b) {
    return binary(
        a.v_, b.v_, [](const mpq_class& x, const mpq_class& y) { return mpq_class(x - y); },
        [](std::uint64_t x, std::uint64_t y, std::uint64_t p) { return (x + p - y) % p; });
}

Scalar operator*(const Scalar& a, const Scalar& b) {
    return binary(
        a.v_, b.v_, [](const mpq_class& x, const mpq_class& y) { return mpq_class(x * y); },
        [](std::uint64_t x, std::uint64_t y, std::uint64_t p) { return x * y % p; });
}

Scalar operator/(const Scalar& a, const Scalar& b) { return a * b.inverse(); }

Scalar Scalar::inverse() const {
    if (is_zero()) fail(ErrorCode::DivisionByZero, "inverse of zero");
    if (auto* m = std::get_if<Mod>(&v_)) return Scalar(mod_pow(m->value, m->modulus - 2, m->modulus), m->modulus);
    return Scalar(mpq_class(1 / std::get<mpq_class>(v_)));
}

Scalar Scalar::pow(std::uint64_t e) const {
    if (auto* m = std::get_if<Mod>(&v_)) return Scalar(mod_pow(m->value, e, m->modulus), m->modulus);
    mpq_class result(1);
    mpq_class base = std::get<mpq_class>(v_);
    while (e > 0) {
        if (e & 1) result *= base;
        base *= base;
        e >>= 1;
    }
    return Scalar(result);
}

Scalar Scalar::frobenius() const {
    if (is_rational()) fail(ErrorCode::CharMismatch, "frobenius requires a prime field of positive characteristic");
    return pow(characteristic());
}

std::optional<Scalar> Scalar::sqrt() const {
    if (auto* m = std::get_if<Mod>(&v_)) {
        for (std::uint64_t r = 0; r < m->modulus; ++r) {
            if (r * r % m->modulus == m->value) return Scalar(r, m->modulus);
        }
        return std::nullopt;
    }
    const mpq_class& q = std::get<mpq_class>(v_);
    if (sgn(q) < 0) return std::nullopt;
    if (!mpz_perfect_square_p(q.get_num_mpz_t()) || !mpz_perfect_square_p(q.get_den_mpz_t())) return std::nullopt;
    mpz_class n, d;
    mpz_sqrt(n.get_mpz_t(), q.get_num_mpz_t());
    mpz_sqrt(d.get_mpz_t(), q.get_den_mpz_t());
    return Scalar(mpq_class(n, d));
}

bool operator==(const Scalar& a, const Scalar& b) {
    if (a.v_.index() != b.v_.index()) return false;
    if (a.v_.index() == 0) return std::get<0>(a.v_) == std::get<0>(b.v_);
    const auto& ma = std::get<1>(a.v_);
    const auto& mb = std::get<1>(b.v_);
    return ma.modulus == mb.modulus && ma.value == mb.value;
}

std::string Scalar::to_string() const {
    if (auto* m = std::get_if<Mod>(&v_)) return std::to_string(m->value);
    return std::get<mpq_class>(v_).get_str();
}

}  // namespace regtensor
