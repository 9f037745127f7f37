#ifndef REGTENSOR_UNIPOLY_HPP
#define REGTENSOR_UNIPOLY_HPP

#include <compare>
#include <cstdint>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "error.hpp"

namespace regtensor {

/// Degree of a univariate polynomial. The zero polynomial has the NegInf
/// sentinel, which refuses arithmetic.
class Degree {
public:
    static Degree neg_inf() { return Degree(); }
    static Degree of(std::size_t d) { return Degree(d); }

    bool is_neg_inf() const { return neg_inf_; }
    std::size_t value() const {
        if (neg_inf_) fail(ErrorCode::InvalidArgument, "degree of the zero polynomial");
        return d_;
    }
    std::string to_string() const { return neg_inf_ ? "-inf" : std::to_string(d_); }

    friend bool operator==(const Degree& a, const Degree& b) {
        return a.neg_inf_ == b.neg_inf_ && (a.neg_inf_ || a.d_ == b.d_);
    }
    friend std::strong_ordering operator<=>(const Degree& a, const Degree& b) {
        if (a.neg_inf_ || b.neg_inf_) return b.neg_inf_ <=> a.neg_inf_;
        return a.d_ <=> b.d_;
    }

private:
    Degree() : neg_inf_(true), d_(0) {}
    explicit Degree(std::size_t d) : neg_inf_(false), d_(d) {}
    bool neg_inf_;
    std::size_t d_;
};

/// Dense univariate polynomial over a field whose elements E support
/// + - * ==, is_zero(), inverse(), characteristic() and to_string().
/// The field's unit travels with each polynomial so that zero and constants
/// can be built without a separate field object.
template <class E>
class UniPoly {
public:
    explicit UniPoly(E one) : one_(std::move(one)), zero_(one_ - one_) {}
    UniPoly(E one, std::vector<E> coeffs) : UniPoly(std::move(one)) {
        c_ = std::move(coeffs);
        trim();
    }

    static UniPoly constant(const E& one, const E& c) { return UniPoly(one, {c}); }
    static UniPoly monomial(const E& one, const E& c, std::size_t deg) {
        UniPoly r(one);
        if (c.is_zero()) return r;
        r.c_.assign(deg + 1, r.zero_);
        r.c_[deg] = c;
        return r;
    }
    static UniPoly x(const E& one) { return monomial(one, one, 1); }

    const E& one() const { return one_; }
    const E& zero() const { return zero_; }
    const std::vector<E>& coeffs() const { return c_; }

    bool is_zero() const { return c_.empty(); }
    bool is_constant() const { return c_.size() <= 1; }
    Degree degree() const { return c_.empty() ? Degree::neg_inf() : Degree::of(c_.size() - 1); }
    /// Degree as a number; throws on the zero polynomial.
    std::size_t deg() const { return degree().value(); }
    const E& coeff(std::size_t i) const { return i < c_.size() ? c_[i] : zero_; }
    const E& lead() const {
        if (c_.empty()) fail(ErrorCode::InvalidArgument, "zero polynomial has no leading coefficient");
        return c_.back();
    }
    bool is_monic() const { return !c_.empty() && c_.back() == one_; }

    E from_int(long long n) const {
        const std::uint64_t p = one_.characteristic();
        bool neg = n < 0;
        std::uint64_t m = neg ? static_cast<std::uint64_t>(-(n + 1)) + 1 : static_cast<std::uint64_t>(n);
        if (p != 0) m %= p;
        E acc = zero_;
        E base = one_;
        while (m > 0) {
            if (m & 1) acc = acc + base;
            base = base + base;
            m >>= 1;
        }
        return neg ? zero_ - acc : acc;
    }

    UniPoly operator-() const {
        UniPoly r(one_);
        r.c_.reserve(c_.size());
        for (const auto& a : c_) r.c_.push_back(zero_ - a);
        return r;
    }
    friend UniPoly operator+(const UniPoly& a, const UniPoly& b) { return a.combine(b, false); }
    friend UniPoly operator-(const UniPoly& a, const UniPoly& b) { return a.combine(b, true); }
    friend UniPoly operator*(const UniPoly& a, const UniPoly& b) {
        UniPoly r(a.one_);
        if (a.is_zero() || b.is_zero()) return r;
        r.c_.assign(a.c_.size() + b.c_.size() - 1, a.zero_);
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i].is_zero()) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j) {
                if (b.c_[j].is_zero()) continue;
                r.c_[i + j] = r.c_[i + j] + a.c_[i] * b.c_[j];
            }
        }
        r.trim();
        return r;
    }
    UniPoly& operator+=(const UniPoly& b) { return *this = *this + b; }
    UniPoly& operator-=(const UniPoly& b) { return *this = *this - b; }
    UniPoly& operator*=(const UniPoly& b) { return *this = *this * b; }

    UniPoly scaled(const E& s) const {
        UniPoly r(one_);
        if (s.is_zero()) return r;
        r.c_.reserve(c_.size());
        for (const auto& a : c_) r.c_.push_back(a * s);
        r.trim();
        return r;
    }

    UniPoly shifted(std::size_t k) const {
        if (is_zero()) return *this;
        UniPoly r(one_);
        r.c_.assign(k, zero_);
        r.c_.insert(r.c_.end(), c_.begin(), c_.end());
        return r;
    }

    /// Quotient and remainder; the divisor's leading coefficient must be invertible.
    std::pair<UniPoly, UniPoly> divmod(const UniPoly& d) const {
        if (d.is_zero()) fail(ErrorCode::DivisionByZero, "polynomial division by zero");
        UniPoly q(one_);
        UniPoly r = *this;
        if (r.c_.size() < d.c_.size()) return {q, r};
        const std::size_t dd = d.c_.size() - 1;
        const E inv = d.c_.back().inverse();
        q.c_.assign(r.c_.size() - dd, zero_);
        for (std::size_t i = r.c_.size(); i-- > dd;) {
            if (r.c_[i].is_zero()) continue;
            E f = r.c_[i] * inv;
            q.c_[i - dd] = f;
            for (std::size_t j = 0; j <= dd; ++j) r.c_[i - dd + j] = r.c_[i - dd + j] - f * d.c_[j];
        }
        q.trim();
        r.trim();
        return {q, r};
    }
    friend UniPoly operator/(const UniPoly& a, const UniPoly& b) { return a.divmod(b).first; }
    friend UniPoly operator%(const UniPoly& a, const UniPoly& b) { return a.divmod(b).second; }

    UniPoly exact_div(const UniPoly& d) const {
        auto [q, r] = divmod(d);
        if (!r.is_zero()) fail(ErrorCode::InexactDivision, "polynomial is not divisible by " + d.to_string());
        return q;
    }

    UniPoly monic() const {
        if (is_zero()) return *this;
        return scaled(lead().inverse());
    }

    UniPoly derivative() const {
        UniPoly r(one_);
        if (c_.size() <= 1) return r;
        r.c_.reserve(c_.size() - 1);
        for (std::size_t i = 1; i < c_.size(); ++i) r.c_.push_back(c_[i] * from_int(static_cast<long long>(i)));
        r.trim();
        return r;
    }

    E evaluate(const E& x) const {
        E acc = zero_;
        for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
        return acc;
    }

    /// this(g(X)).
    UniPoly compose(const UniPoly& g) const {
        UniPoly acc(one_);
        for (std::size_t i = c_.size(); i-- > 0;) acc = acc * g + constant(one_, c_[i]);
        return acc;
    }

    UniPoly pow(std::uint64_t e) const {
        UniPoly result = constant(one_, one_);
        UniPoly base = *this;
        while (e > 0) {
            if (e & 1) result = result * base;
            e >>= 1;
            if (e > 0) base = base * base;
        }
        return result;
    }

    /// Applies a coefficient map, e.g. a field embedding.
    template <class F, class Map>
    UniPoly<F> map(const F& target_one, Map&& m) const {
        std::vector<F> out;
        out.reserve(c_.size());
        for (const auto& a : c_) out.push_back(m(a));
        return UniPoly<F>(target_one, std::move(out));
    }

    std::string to_string(const std::string& var = "X") const {
        if (c_.empty()) return "0";
        std::string out;
        for (std::size_t i = c_.size(); i-- > 0;) {
            if (c_[i].is_zero()) continue;
            std::string cs = c_[i].to_string();
            bool negative = !cs.empty() && cs[0] == '-' && cs.find_first_of(" +", 1) == std::string::npos;
            if (negative) cs = cs.substr(1);
            bool compound = cs.find_first_of(" +-/") != std::string::npos;
            std::string mono = i == 0 ? "" : (i == 1 ? var : var + "^" + std::to_string(i));
            std::string body;
            if (mono.empty()) {
                body = compound ? "(" + cs + ")" : cs;
            } else if (cs == "1") {
                body = mono;
            } else {
                body = (compound ? "(" + cs + ")" : cs) + "*" + mono;
            }
            if (out.empty()) {
                out = negative ? "-" + body : body;
            } else {
                out += negative ? " - " : " + ";
                out += body;
            }
        }
        return out;
    }

    friend bool operator==(const UniPoly& a, const UniPoly& b) {
        if (a.c_.size() != b.c_.size()) return false;
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (!(a.c_[i] == b.c_[i])) return false;
        }
        return true;
    }

private:
    void trim() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }

    UniPoly combine(const UniPoly& b, bool subtract) const {
        UniPoly r(one_);
        const std::size_t n = std::max(c_.size(), b.c_.size());
        r.c_.reserve(n);
        for (std::size_t i = 0; i < n; ++i) {
            const E& x = coeff(i);
            const E& y = b.coeff(i);
            if (y.is_zero()) {
                r.c_.push_back(x);
            } else {
                r.c_.push_back(subtract ? x - y : x + y);
            }
        }
        r.trim();
        return r;
    }

    E one_;
    E zero_;
    std::vector<E> c_;
};

/// Monic gcd by the Euclidean remainder sequence. Throws BothZero for gcd(0, 0).
template <class E>
UniPoly<E> gcd(const UniPoly<E>& f, const UniPoly<E>& g) {
    if (f.is_zero() && g.is_zero()) fail(ErrorCode::BothZero, "gcd of two zero polynomials");
    UniPoly<E> a = f;
    UniPoly<E> b = g;
    while (!b.is_zero()) {
        UniPoly<E> r = a % b;
        a = std::move(b);
        b = r.monic();
    }
    return a.monic();
}

/// Returns (g, s, t) with s*f + t*h = g = gcd(f, h), g monic.
template <class E>
std::tuple<UniPoly<E>, UniPoly<E>, UniPoly<E>> ext_gcd(const UniPoly<E>& f, const UniPoly<E>& h) {
    if (f.is_zero() && h.is_zero()) fail(ErrorCode::BothZero, "gcd of two zero polynomials");
    const E& one = f.one();
    UniPoly<E> r0 = f, r1 = h;
    UniPoly<E> s0 = UniPoly<E>::constant(one, one), s1(one);
    UniPoly<E> t0(one), t1 = UniPoly<E>::constant(one, one);
    while (!r1.is_zero()) {
        auto [q, r] = r0.divmod(r1);
        r0 = std::move(r1);
        r1 = std::move(r);
        UniPoly<E> s2 = s0 - q * s1;
        s0 = std::move(s1);
        s1 = std::move(s2);
        UniPoly<E> t2 = t0 - q * t1;
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    E inv = r0.lead().inverse();
    return {r0.scaled(inv), s0.scaled(inv), t0.scaled(inv)};
}

/// base^e mod m.
template <class E>
UniPoly<E> pow_mod(const UniPoly<E>& base, std::uint64_t e, const UniPoly<E>& m) {
    UniPoly<E> result = UniPoly<E>::constant(base.one(), base.one()) % m;
    UniPoly<E> b = base % m;
    while (e > 0) {
        if (e & 1) result = (result * b) % m;
        e >>= 1;
        if (e > 0) b = (b * b) % m;
    }
    return result;
}

template <class E>
bool is_squarefree(const UniPoly<E>& f) {
    return gcd(f, f.derivative()).is_constant();
}

/// Writes f(X) = g(X^{p^e}) with e maximal. For characteristic 0, or when
/// some exponent is prime to p, returns (f, 0). When f is irreducible the
/// returned g is separable.
template <class E>
std::pair<UniPoly<E>, unsigned> separability_split(const UniPoly<E>& f) {
    if (f.is_constant()) fail(ErrorCode::ConstantInput, "separability_split needs a nonconstant polynomial");
    const std::uint64_t p = f.one().characteristic();
    if (p == 0) return {f, 0};
    UniPoly<E> g = f;
    unsigned e = 0;
    for (;;) {
        const auto& c = g.coeffs();
        bool all = true;
        for (std::size_t i = 0; i < c.size() && all; ++i) {
            if (i % p != 0 && !c[i].is_zero()) all = false;
        }
        if (!all) break;
        std::vector<E> shrunk;
        for (std::size_t i = 0; i < c.size(); i += p) shrunk.push_back(c[i]);
        g = UniPoly<E>(f.one(), std::move(shrunk));
        ++e;
    }
    return {g, e};
}

}  // namespace regtensor

#endif  // REGTENSOR_UNIPOLY_HPP
