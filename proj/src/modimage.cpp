#include "modimage.hpp"

#include <map>
#include <mutex>
#include <optional>
#include <random>
#include <vector>

namespace regtensor {

namespace {

using u64 = std::uint64_t;
using Elem = std::vector<u64>;  // coefficients over F_l, length k
using Poly = std::vector<Elem>;  // univariate, constant term first, trimmed

u64 mulmod(u64 a, u64 b, u64 l) { return static_cast<u64>((static_cast<unsigned __int128>(a) * b) % l); }

u64 powmod(u64 a, u64 e, u64 l) {
    u64 r = 1 % l;
    for (; e > 0; e >>= 1) {
        if (e & 1) r = mulmod(r, a, l);
        a = mulmod(a, a, l);
    }
    return r;
}

// GF(l^k) = F_l[t]/(m) with m monic of degree k.
struct Gf {
    u64 l = 2;
    unsigned k = 1;
    std::vector<u64> m;  // length k + 1

    Elem zero() const { return Elem(k, 0); }
    Elem scalar(u64 c) const {
        Elem e(k, 0);
        e[0] = c % l;
        return e;
    }
    static bool is_zero(const Elem& a) {
        for (auto c : a) {
            if (c) return false;
        }
        return true;
    }
    Elem add(const Elem& a, const Elem& b) const {
        Elem r(k);
        for (unsigned i = 0; i < k; ++i) r[i] = (a[i] + b[i]) % l;
        return r;
    }
    Elem sub(const Elem& a, const Elem& b) const {
        Elem r(k);
        for (unsigned i = 0; i < k; ++i) r[i] = (a[i] + l - b[i]) % l;
        return r;
    }
    Elem mul(const Elem& a, const Elem& b) const {
        if (k == 1) return {mulmod(a[0], b[0], l)};
        std::vector<u64> t(2 * k - 1, 0);
        for (unsigned i = 0; i < k; ++i) {
            if (!a[i]) continue;
            for (unsigned j = 0; j < k; ++j) {
                if (b[j]) t[i + j] = (t[i + j] + mulmod(a[i], b[j], l)) % l;
            }
        }
        for (std::size_t d = t.size(); d-- > k;) {
            const u64 c = t[d];
            if (!c) continue;
            for (unsigned j = 0; j < k; ++j) t[d - k + j] = (t[d - k + j] + l - mulmod(c, m[j], l)) % l;
            t[d] = 0;
        }
        t.resize(k);
        return t;
    }
    Elem pow(Elem a, u64 e) const {
        Elem r = scalar(1);
        for (; e > 0; e >>= 1) {
            if (e & 1) r = mul(r, a);
            a = mul(a, a);
        }
        return r;
    }
    u64 order() const {
        u64 q = 1;
        for (unsigned i = 0; i < k; ++i) q *= l;
        return q;
    }
    Elem inv(const Elem& a) const { return pow(a, order() - 2); }
    Elem random(std::mt19937_64& rng) const {
        std::uniform_int_distribution<u64> d(0, l - 1);
        Elem e(k);
        for (auto& c : e) c = d(rng);
        return e;
    }
};

void trim(const Gf&, Poly& p) {
    while (!p.empty() && Gf::is_zero(p.back())) p.pop_back();
}

// Remainder of a by b (b nonzero).
Poly rem(const Gf& f, Poly a, const Poly& b) {
    const Elem lead_inv = f.inv(b.back());
    while (a.size() >= b.size()) {
        const Elem c = f.mul(a.back(), lead_inv);
        const std::size_t shift = a.size() - b.size();
        for (std::size_t j = 0; j < b.size(); ++j) a[shift + j] = f.sub(a[shift + j], f.mul(c, b[j]));
        trim(f, a);
    }
    return a;
}

std::size_t gcd_degree(const Gf& f, Poly a, Poly b) {
    while (!b.empty()) {
        Poly r = rem(f, std::move(a), b);
        a = std::move(b);
        b = std::move(r);
    }
    return a.empty() ? 0 : a.size() - 1;
}

Poly mulmod_poly(const Gf& f, const Poly& a, const Poly& b, const Poly& m) {
    if (a.empty() || b.empty()) return {};
    Poly t(a.size() + b.size() - 1, f.zero());
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; j < b.size(); ++j) t[i + j] = f.add(t[i + j], f.mul(a[i], b[j]));
    }
    trim(f, t);
    return rem(f, std::move(t), m);
}

Poly powmod_poly(const Gf& f, Poly a, u64 e, const Poly& m) {
    Poly r{f.scalar(1)};
    r = rem(f, std::move(r), m);
    for (; e > 0; e >>= 1) {
        if (e & 1) r = mulmod_poly(f, r, a, m);
        a = mulmod_poly(f, a, a, m);
    }
    return r;
}

bool is_prime_small(unsigned n) {
    if (n < 2) return false;
    for (unsigned d = 2; d * d <= n; ++d) {
        if (n % d == 0) return false;
    }
    return true;
}

// Monic irreducible of prime degree k over F_l: X^{l^k} = X mod m and no
// roots in F_l.
std::vector<u64> irreducible_modulus(u64 l, unsigned k, std::mt19937_64& rng) {
    const Gf base{l, 1, {0, 1}};
    std::uniform_int_distribution<u64> d(0, l - 1);
    for (;;) {
        Poly m;
        for (unsigned i = 0; i < k; ++i) m.push_back({d(rng)});
        m.push_back({1});
        Poly x{{0}, {1}};
        Poly xp = powmod_poly(base, x, l, m);
        Poly y = xp;
        for (unsigned i = 1; i < k; ++i) y = powmod_poly(base, y, l, m);
        if (!(y == rem(base, x, m))) continue;
        Poly roots = xp;
        roots.resize(std::max<std::size_t>(roots.size(), 2), {0});
        roots[1] = base.sub(roots[1], {1});
        trim(base, roots);
        if (roots.empty() || gcd_degree(base, m, roots) != 0) continue;
        std::vector<u64> out;
        for (const auto& c : m) out.push_back(c[0]);
        return out;
    }
}

const Gf& field_for(u64 p) {
    static std::mutex mu;
    static std::map<u64, Gf> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(p);
    if (it != cache.end()) return it->second;
    Gf f;
    if (p == 0 || p >= (u64{1} << 20)) {
        f.l = p == 0 ? 2147483647ULL : p;
        f.k = 1;
        f.m = {0, 1};
    } else {
        unsigned k = 1;
        for (u64 q = p; q < (u64{1} << 20); q *= p) ++k;
        while (!is_prime_small(k)) ++k;
        std::mt19937_64 rng(0x6d6f64ULL + p);
        f.l = p;
        f.k = k;
        f.m = irreducible_modulus(p, k, rng);
    }
    return cache.emplace(p, std::move(f)).first->second;
}

std::optional<Elem> image(const Gf& f, const Scalar& c) {
    if (!c.is_rational()) return f.scalar(c.residue());
    const mpq_class& q = c.as_rational();
    mpz_class num = q.get_num() % f.l;
    if (num < 0) num += f.l;
    mpz_class den = q.get_den() % f.l;
    if (den == 0) return std::nullopt;
    return f.scalar(mulmod(num.get_ui(), powmod(den.get_ui(), f.l - 2, f.l), f.l));
}

// Univariate image of p in `var` with the other variables at `point`.
std::optional<Poly> specialize(const Gf& f, const MultiPoly& p, std::size_t var, const std::vector<Elem>& point) {
    Poly out(p.degree_in(var) + 1, f.zero());
    for (const auto& t : p.terms()) {
        auto c = image(f, t.coef);
        if (!c) return std::nullopt;
        Elem v = *c;
        for (std::size_t w = 0; w < t.exp.size(); ++w) {
            if (w != var && t.exp[w]) v = f.mul(v, f.pow(point[w], t.exp[w]));
        }
        out[t.exp[var]] = f.add(out[t.exp[var]], v);
    }
    return out;
}

}  // namespace

bool coprime_in_variable(const MultiPoly& f, const MultiPoly& g, std::size_t var) {
    const Gf& field = field_for(f.ring()->field.characteristic());
    thread_local std::mt19937_64 rng(0x5eedULL);
    const std::size_t n = f.ring()->arity();
    const std::size_t df = f.degree_in(var);
    const std::size_t dg = g.degree_in(var);
    for (int attempt = 0; attempt < 4; ++attempt) {
        std::vector<Elem> point(n);
        for (auto& e : point) e = field.random(rng);
        auto a = specialize(field, f, var, point);
        auto b = specialize(field, g, var, point);
        if (!a || !b) return false;
        if (a->size() != df + 1 || Gf::is_zero(a->back())) continue;
        if (b->size() != dg + 1 || Gf::is_zero(b->back())) continue;
        return gcd_degree(field, std::move(*a), std::move(*b)) == 0;
    }
    return false;
}

}  // namespace regtensor
