#include "ratfunc.hpp"

#include "error.hpp"

namespace regtensor {

RatFunc::RatFunc(RingPtr ring) : num_(ring), den_(MultiPoly::from_int(ring, 1)) {}

RatFunc::RatFunc(MultiPoly num) : num_(std::move(num)), den_(MultiPoly::from_int(num_.ring(), 1)) {}

RatFunc::RatFunc(MultiPoly num, MultiPoly den) : RatFunc(make(std::move(num), std::move(den))) {}

RatFunc RatFunc::make(MultiPoly num, MultiPoly den) {
    if (!same_ring(num.ring(), den.ring())) fail(ErrorCode::ArityMismatch, "numerator and denominator rings differ");
    if (den.is_zero()) fail(ErrorCode::DivisionByZero, "rational function with zero denominator");
    RingPtr ring = num.ring();
    if (num.is_zero()) return RatFunc(std::move(num), MultiPoly::from_int(ring, 1), Normalized{});
    if (den.is_constant()) {
        Scalar inv = den.constant_value().inverse();
        return RatFunc(num.scaled(inv), MultiPoly::from_int(ring, 1), Normalized{});
    }
    MultiPoly g = gcd(num, den);
    if (!g.is_one()) {
        num = num.exact_div(g);
        den = den.exact_div(g);
    }
    Scalar lc_inv = den.leading_coef().inverse();
    return RatFunc(num.scaled(lc_inv), den.scaled(lc_inv), Normalized{});
}

RatFunc RatFunc::from_int(RingPtr ring, long long c) { return RatFunc(MultiPoly::from_int(std::move(ring), c)); }

RatFunc RatFunc::constant(RingPtr ring, const Scalar& c) { return RatFunc(MultiPoly::constant(std::move(ring), c)); }

RatFunc RatFunc::variable(RingPtr ring, std::size_t index) {
    return RatFunc(MultiPoly::variable(std::move(ring), index));
}

RatFunc RatFunc::make_coprime(MultiPoly num, MultiPoly den) {
    RingPtr ring = num.ring();
    if (num.is_zero()) return RatFunc(std::move(num), MultiPoly::from_int(ring, 1), Normalized{});
    Scalar lc_inv = den.leading_coef().inverse();
    return RatFunc(num.scaled(lc_inv), den.scaled(lc_inv), Normalized{});
}

RatFunc RatFunc::operator-() const { return RatFunc(-num_, den_, Normalized{}); }

RatFunc operator+(const RatFunc& a, const RatFunc& b) {
    if (b.is_zero()) return a;
    if (a.is_zero()) return b;
    if (a.den_ == b.den_) {
        if (a.den_.is_one()) return RatFunc(a.num_ + b.num_, a.den_, RatFunc::Normalized{});
        return RatFunc::make(a.num_ + b.num_, a.den_);
    }
    // With g = gcd(b, d): a/b + c/d = (a*(d/g) + c*(b/g)) / (b*d/g), and only
    // factors of g can cancel.
    const MultiPoly g = gcd(a.den_, b.den_);
    if (g.is_one()) return RatFunc::make_coprime(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    const MultiPoly bd = a.den_.exact_div(g);
    const MultiPoly dd = b.den_.exact_div(g);
    MultiPoly t = a.num_ * dd + b.num_ * bd;
    if (t.is_zero()) return RatFunc(a.ring());
    MultiPoly den = bd * b.den_;
    const MultiPoly h = gcd(t, g);
    if (!h.is_one()) {
        t = t.exact_div(h);
        den = den.exact_div(h);
    }
    return RatFunc::make_coprime(std::move(t), std::move(den));
}

RatFunc operator-(const RatFunc& a, const RatFunc& b) { return a + (-b); }

RatFunc operator*(const RatFunc& a, const RatFunc& b) {
    if (a.is_zero() || b.is_zero()) return RatFunc(a.ring());
    if (a.den_.is_one() && b.den_.is_one()) return RatFunc(a.num_ * b.num_, a.den_, RatFunc::Normalized{});
    // Cross-cancel first so the products stay small.
    MultiPoly g1 = gcd(a.num_, b.den_);
    MultiPoly g2 = gcd(b.num_, a.den_);
    MultiPoly n = a.num_.exact_div(g1) * b.num_.exact_div(g2);
    MultiPoly d = a.den_.exact_div(g2) * b.den_.exact_div(g1);
    if (d.is_constant()) return RatFunc(n.scaled(d.constant_value().inverse()), MultiPoly::from_int(a.ring(), 1),
                                        RatFunc::Normalized{});
    Scalar lc_inv = d.leading_coef().inverse();
    return RatFunc(n.scaled(lc_inv), d.scaled(lc_inv), RatFunc::Normalized{});
}

RatFunc operator/(const RatFunc& a, const RatFunc& b) { return a * b.inverse(); }

RatFunc RatFunc::scaled(const Scalar& c) const {
    if (c.is_zero()) return RatFunc(ring());
    return RatFunc(num_.scaled(c), den_, Normalized{});
}

RatFunc RatFunc::inverse() const {
    if (is_zero()) fail(ErrorCode::DivisionByZero, "inverse of zero rational function");
    Scalar lc_inv = num_.leading_coef().inverse();
    return RatFunc(den_.scaled(lc_inv), num_.scaled(lc_inv), Normalized{});
}

RatFunc RatFunc::pow(std::uint64_t e) const {
    // Powers of coprime polynomials stay coprime.
    MultiPoly d = den_.pow(e);
    return RatFunc(num_.pow(e), d.monic(), Normalized{});
}

std::optional<RatFunc> RatFunc::pth_root() const {
    const std::uint64_t p = ring()->field.characteristic();
    if (p == 0) fail(ErrorCode::CharMismatch, "p-th roots need positive characteristic");
    auto divisible = [p](const MultiPoly& f) {
        for (const auto& t : f.terms()) {
            for (auto e : t.exp) {
                if (e % p != 0) return false;
            }
        }
        return true;
    };
    if (!divisible(num_) || !divisible(den_)) return std::nullopt;
    auto shrink = [p](const Exponents& e) {
        Exponents r(e.size());
        for (std::size_t i = 0; i < e.size(); ++i) r[i] = static_cast<std::uint32_t>(e[i] / p);
        return r;
    };
    // Coefficients lie in F_p, where Frobenius is the identity.
    return RatFunc(num_.map_exponents(shrink), den_.map_exponents(shrink), Normalized{});
}

std::optional<MultiPoly> poly_sqrt(const MultiPoly& f) {
    if (f.ring()->field.characteristic() == 2) fail(ErrorCode::CharMismatch, "poly_sqrt needs characteristic != 2");
    if (f.is_zero()) return f;
    const auto& lead = f.leading();
    Exponents half(lead.exp.size());
    for (std::size_t i = 0; i < half.size(); ++i) {
        if (lead.exp[i] % 2 != 0) return std::nullopt;
        half[i] = lead.exp[i] / 2;
    }
    auto c = lead.coef.sqrt();
    if (!c) return std::nullopt;
    MultiPoly root = MultiPoly::monomial(f.ring(), half, *c);
    const Scalar two_lead_inv = (*c + *c).inverse();
    Exponents last = half;
    MultiPoly rem = f - root * root;
    while (!rem.is_zero()) {
        const auto& lr = rem.leading();
        Exponents e(lr.exp.size());
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (lr.exp[i] < half[i]) return std::nullopt;
            e[i] = lr.exp[i] - half[i];
        }
        if (!grlex_less(e, last)) return std::nullopt;
        MultiPoly t = MultiPoly::monomial(f.ring(), e, lr.coef * two_lead_inv);
        root = root + t;
        rem = f - root * root;
        last = e;
    }
    return root;
}

std::optional<RatFunc> RatFunc::sqrt() const {
    if (is_zero()) return *this;
    // sqrt(N/D) = sqrt(N*D)/D.
    auto r = poly_sqrt(num_ * den_);
    if (!r) return std::nullopt;
    return RatFunc(*r, den_);
}

RatFunc RatFunc::in_ring(const RingPtr& target) const {
    MultiPoly n = num_.in_ring(target);
    MultiPoly d = den_.in_ring(target);
    // The leading term may change under a new variable order.
    Scalar lc_inv = d.leading_coef().inverse();
    return RatFunc(n.scaled(lc_inv), d.scaled(lc_inv), Normalized{});
}

std::string RatFunc::to_string() const {
    if (den_.is_one()) return num_.to_string();
    auto wrap = [](const MultiPoly& f) {
        std::string s = f.to_string();
        return f.size() > 1 || (f.size() == 1 && !f.leading().coef.is_one() && !f.is_constant()) ? "(" + s + ")" : s;
    };
    return wrap(num_) + "/" + wrap(den_);
}

std::vector<RatFunc> split_by_power(const RatFunc& h, std::uint64_t q) {
    const RingPtr& ring = h.ring();
    const std::size_t n = ring->arity();
    std::size_t slots = 1;
    for (std::size_t i = 0; i < n; ++i) slots *= q;
    std::vector<RatFunc> out(slots, RatFunc(ring));
    if (h.is_zero()) return out;
    // h = N D^{q-1} / D^q and D^q = D(T^q) when coefficients lie in F_p.
    MultiPoly g = h.num() * h.den().pow(q - 1);
    std::vector<std::vector<MultiPoly::Term>> groups(slots);
    for (const auto& t : g.terms()) {
        std::size_t idx = 0;
        Exponents e(n);
        for (std::size_t i = n; i-- > 0;) {
            idx = idx * q + t.exp[i] % q;
            e[i] = static_cast<std::uint32_t>(t.exp[i] / q);
        }
        groups[idx].push_back({std::move(e), t.coef});
    }
    for (std::size_t s = 0; s < slots; ++s) {
        if (!groups[s].empty()) out[s] = RatFunc(MultiPoly::from_terms(ring, std::move(groups[s])), h.den());
    }
    return out;
}

}  // namespace regtensor
