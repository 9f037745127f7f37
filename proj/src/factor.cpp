#include "factor.hpp"

#include <algorithm>
#include <functional>
#include <random>

#include "error.hpp"

namespace regtensor {

std::string_view cert_method_name(CertMethod m) {
    switch (m) {
        case CertMethod::FiniteFieldFactorization: return "FiniteFieldFactorization";
        case CertMethod::BinomialCriterion: return "BinomialCriterion";
        case CertMethod::QuadraticRootSearch: return "QuadraticRootSearch";
        case CertMethod::DegreeOne: return "DegreeOne";
    }
    return "Unknown";
}

namespace {

// ---------------------------------------------------------------------------
// Finite fields F_q, q = p^k, with elements of type E.

template <class E>
struct FiniteField {
    E one;
    std::uint64_t p;
    unsigned k;
    std::function<E(std::mt19937_64&)> random;

    mpz_class order() const {
        mpz_class q;
        mpz_ui_pow_ui(q.get_mpz_t(), p, k);
        return q;
    }
    // Inverse Frobenius: a^{q/p}.
    E pth_root(const E& a) const {
        E r = a;
        for (unsigned i = 0; i + 1 < k; ++i) r = r.pow(p);
        return r;
    }
};

template <class E>
UniPoly<E> x_power_q(const UniPoly<E>& h, const UniPoly<E>& f, const FiniteField<E>& ff) {
    UniPoly<E> r = h;
    for (unsigned i = 0; i < ff.k; ++i) r = pow_mod(r, ff.p, f);
    return r;
}

template <class E>
UniPoly<E> pow_mod_big(const UniPoly<E>& base, const mpz_class& e, const UniPoly<E>& m) {
    UniPoly<E> result = UniPoly<E>::constant(base.one(), base.one()) % m;
    UniPoly<E> b = base % m;
    const std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
    for (std::size_t i = bits; i-- > 0;) {
        result = (result * result) % m;
        if (mpz_tstbit(e.get_mpz_t(), i)) result = (result * b) % m;
    }
    return result;
}

template <class E>
bool poly_less(const UniPoly<E>& a, const UniPoly<E>& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    return a.to_string() < b.to_string();
}

template <class E>
using FactorList = std::vector<std::pair<UniPoly<E>, unsigned>>;

template <class E>
FactorList<E> ff_squarefree(const UniPoly<E>& f, const FiniteField<E>& ff) {
    FactorList<E> out;
    UniPoly<E> c = gcd(f, f.derivative());
    UniPoly<E> w = f / c;
    unsigned i = 1;
    while (!w.is_constant()) {
        UniPoly<E> y = gcd(w, c);
        UniPoly<E> z = w / y;
        if (!z.is_constant()) out.push_back({z.monic(), i});
        ++i;
        w = y;
        c = c / y;
    }
    if (!c.is_constant()) {
        std::vector<E> root;
        const auto& cc = c.coeffs();
        for (std::size_t j = 0; j < cc.size(); j += ff.p) root.push_back(ff.pth_root(cc[j]));
        for (auto& [g, e] : ff_squarefree(UniPoly<E>(f.one(), std::move(root)), ff)) {
            out.push_back({g, static_cast<unsigned>(e * ff.p)});
        }
    }
    return out;
}

template <class E>
std::vector<std::pair<UniPoly<E>, std::size_t>> ff_ddf(const UniPoly<E>& f, const FiniteField<E>& ff) {
    std::vector<std::pair<UniPoly<E>, std::size_t>> out;
    const UniPoly<E> X = UniPoly<E>::x(f.one());
    UniPoly<E> rest = f;
    UniPoly<E> h = X % rest;
    std::size_t i = 0;
    while (rest.deg() >= 2 * (i + 1)) {
        ++i;
        h = x_power_q(h, rest, ff);
        UniPoly<E> g = gcd(rest, h - X);
        if (!g.is_constant()) {
            out.push_back({g, i});
            rest = rest / g;
            h = h % rest;
        }
    }
    if (!rest.is_constant()) out.push_back({rest.monic(), rest.deg()});
    return out;
}

template <class E>
void ff_edf(const UniPoly<E>& f, std::size_t d, const FiniteField<E>& ff, std::mt19937_64& rng,
            std::vector<UniPoly<E>>& out) {
    const std::size_t n = f.deg();
    if (n == d) {
        out.push_back(f.monic());
        return;
    }
    mpz_class qd;
    mpz_pow_ui(qd.get_mpz_t(), ff.order().get_mpz_t(), d);
    const mpz_class half = (qd - 1) / 2;
    const UniPoly<E> one = UniPoly<E>::constant(f.one(), f.one());
    for (int attempt = 0; attempt < 10000; ++attempt) {
        std::vector<E> coeffs;
        for (std::size_t j = 0; j < n; ++j) coeffs.push_back(ff.random(rng));
        UniPoly<E> a(f.one(), std::move(coeffs));
        if (a.is_constant()) continue;
        UniPoly<E> b(f.one());
        if (ff.p == 2) {
            // Trace to F_2: a + a^2 + ... + a^{2^{kd-1}}.
            UniPoly<E> t = a % f;
            b = t;
            for (std::size_t j = 1; j < ff.k * d; ++j) {
                t = (t * t) % f;
                b = b + t;
            }
        } else {
            b = pow_mod_big(a, half, f) - one;
        }
        if (b.is_zero()) continue;
        UniPoly<E> g = gcd(f, b);
        if (g.is_constant() || g.deg() == n) continue;
        ff_edf(g, d, ff, rng, out);
        ff_edf(f / g, d, ff, rng, out);
        return;
    }
    fail(ErrorCode::InternalInconsistency, "equal-degree splitting did not converge");
}

template <class E>
FactorList<E> ff_factor(const UniPoly<E>& f, const FiniteField<E>& ff) {
    if (f.is_zero()) fail(ErrorCode::InvalidArgument, "cannot factor the zero polynomial");
    FactorList<E> out;
    if (f.is_constant()) return out;
    std::mt19937_64 rng(0x5eedf00dULL + f.deg());
    for (auto& [sq, e] : ff_squarefree(f.monic(), ff)) {
        for (auto& [g, d] : ff_ddf(sq, ff)) {
            std::vector<UniPoly<E>> parts;
            ff_edf(g, d, ff, rng, parts);
            for (auto& part : parts) out.push_back({part, e});
        }
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        if (a.first == b.first) return a.second < b.second;
        return poly_less(a.first, b.first);
    });
    return out;
}

template <class E>
bool ff_irreducible(const UniPoly<E>& f, const FiniteField<E>& ff) {
    if (f.is_constant()) return false;
    const UniPoly<E> g = f.monic();
    const UniPoly<E> X = UniPoly<E>::x(f.one());
    UniPoly<E> h = X % g;
    for (std::size_t j = 1; 2 * j <= g.deg(); ++j) {
        h = x_power_q(h, g, ff);
        if (!gcd(g, h - X).is_constant()) return false;
    }
    return true;
}

FiniteField<Scalar> prime_field_ops(std::uint64_t p) {
    return FiniteField<Scalar>{Scalar(1, p), p, 1, [p](std::mt19937_64& rng) {
                                   return Scalar(std::uniform_int_distribution<std::uint64_t>(0, p - 1)(rng), p);
                               }};
}

bool is_finite(const AlgebraPtr& field) {
    return field->ring()->field.characteristic() != 0 && field->ring()->arity() == 0;
}

FiniteField<AlgElem> algebra_field_ops(const AlgebraPtr& field) {
    const std::uint64_t p = field->ring()->field.characteristic();
    const RingPtr ring = field->ring();
    const std::size_t dim = field->dim();
    return FiniteField<AlgElem>{field->one(), p, static_cast<unsigned>(dim), [field, ring, p, dim](std::mt19937_64& rng) {
                                    std::vector<RatFunc> c;
                                    std::uniform_int_distribution<std::uint64_t> d(0, p - 1);
                                    for (std::size_t i = 0; i < dim; ++i) c.push_back(RatFunc::constant(ring, Scalar(d(rng), p)));
                                    return field->element(std::move(c));
                                }};
}

FpPoly to_fp(const AlgPoly& f) {
    const std::uint64_t p = f.one().characteristic();
    std::vector<Scalar> c;
    for (const auto& x : f.coeffs()) c.push_back(x.coords()[0].is_zero() ? Scalar(0, p) : x.coords()[0].num().constant_value());
    return FpPoly(Scalar(1, p), std::move(c));
}

AlgPoly from_fp(const FpPoly& f, const AlgebraPtr& field) {
    std::vector<AlgElem> c;
    for (const auto& x : f.coeffs()) c.push_back(field->scalar(RatFunc::constant(field->ring(), x)));
    return AlgPoly(field->one(), std::move(c));
}

std::vector<std::pair<AlgPoly, unsigned>> factor_finite(const AlgebraPtr& field, const AlgPoly& f) {
    std::vector<std::pair<AlgPoly, unsigned>> out;
    if (field->dim() == 1) {
        for (auto& [g, e] : factor_finite_field(to_fp(f))) out.push_back({from_fp(g, field), e});
    } else {
        for (auto& [g, e] : ff_factor(f, algebra_field_ops(field))) out.push_back({g, e});
    }
    return out;
}

bool finite_irreducible(const AlgebraPtr& field, const AlgPoly& f) {
    if (field->dim() == 1) return finite_field_irreducible(to_fp(f));
    return ff_irreducible(f, algebra_field_ops(field));
}

// F_q(T) with F_q given by relations over F_p: the constant algebra F_q, or
// nothing when some relation involves T.
std::optional<AlgebraPtr> constant_field(const AlgebraPtr& field) {
    if (field->ring()->field.characteristic() == 0 || field->ring()->arity() == 0) return std::nullopt;
    try {
        return field->in_ring(make_ring(field->ring()->field, {}));
    } catch (const Error& e) {
        if (e.code() != ErrorCode::ArityMismatch) throw;
        return std::nullopt;
    }
}

// A polynomial over F_q(T) whose coefficients lie in F_q, moved into F_q.
std::optional<AlgPoly> to_constant_field(const AlgPoly& f, const AlgebraPtr& constants) {
    std::vector<AlgElem> c;
    try {
        for (const auto& x : f.coeffs()) {
            std::vector<RatFunc> coords;
            for (const auto& r : x.coords()) coords.push_back(r.in_ring(constants->ring()));
            c.push_back(constants->element(std::move(coords)));
        }
    } catch (const Error& e) {
        if (e.code() != ErrorCode::ArityMismatch) throw;
        return std::nullopt;
    }
    return AlgPoly(constants->one(), std::move(c));
}

AlgPoly from_constant_field(const AlgPoly& f, const AlgebraPtr& field) {
    std::vector<AlgElem> c;
    for (const auto& x : f.coeffs()) {
        std::vector<RatFunc> coords;
        for (const auto& r : x.coords()) coords.push_back(r.in_ring(field->ring()));
        c.push_back(field->element(std::move(coords)));
    }
    return AlgPoly(field->one(), std::move(c));
}

}  // namespace

std::vector<std::pair<FpPoly, unsigned>> factor_finite_field(const FpPoly& f) {
    const std::uint64_t p = f.one().characteristic();
    if (p == 0) fail(ErrorCode::CharMismatch, "finite field factorization needs a prime modulus");
    return ff_factor(f, prime_field_ops(p));
}

bool finite_field_irreducible(const FpPoly& f) {
    const std::uint64_t p = f.one().characteristic();
    if (p == 0) fail(ErrorCode::CharMismatch, "finite field irreducibility needs a prime modulus");
    return ff_irreducible(f, prime_field_ops(p));
}

// ---------------------------------------------------------------------------
// p-th roots.

std::vector<RatFunc> frobenius_decompose(const RatFunc& h) {
    const std::uint64_t p = h.ring()->field.characteristic();
    if (p == 0) fail(ErrorCode::CharMismatch, "frobenius_decompose needs positive characteristic");
    return split_by_power(h, p);
}

PthRootSystem pth_root_system(const AlgebraPtr& field, const AlgElem& c) {
    const std::uint64_t p = field->ring()->field.characteristic();
    if (p == 0) fail(ErrorCode::CharMismatch, "p-th roots need positive characteristic");
    const std::size_t dim = field->dim();
    std::size_t slots = 1;
    for (std::size_t i = 0; i < field->ring()->arity(); ++i) slots *= p;
    PthRootSystem sys;
    const RatFunc zero(field->ring());
    sys.m.assign(dim * slots, std::vector<RatFunc>(dim, zero));
    sys.v.assign(dim * slots, zero);
    for (std::size_t g = 0; g < dim; ++g) {
        AlgElem w = field->basis(g).pow(p);
        for (std::size_t i = 0; i < dim; ++i) {
            if (w.coords()[i].is_zero()) continue;
            auto parts = frobenius_decompose(w.coords()[i]);
            for (std::size_t s = 0; s < slots; ++s) sys.m[i * slots + s][g] = parts[s];
        }
    }
    for (std::size_t i = 0; i < dim; ++i) {
        if (c.coords()[i].is_zero()) continue;
        auto parts = frobenius_decompose(c.coords()[i]);
        for (std::size_t s = 0; s < slots; ++s) sys.v[i * slots + s] = parts[s];
    }
    return sys;
}

PthRoot pth_root(const AlgebraPtr& field, const AlgElem& c) {
    PthRoot out;
    const RingPtr& ring = field->ring();
    const std::uint64_t p = ring->field.characteristic();
    AlgElem cc = field->embed(c);
    if (field->dim() == 1) {
        // Fast path inside F0.
        if (auto r = cc.coords()[0].pth_root()) {
            out.root = field->scalar(*r);
            return out;
        }
    }
    PthRootSystem sys = pth_root_system(field, cc);
    const RatFunc zero(ring);
    const RatFunc one = RatFunc::from_int(ring, 1);
    auto res = solve(sys.m, field->dim(), sys.v, zero, one);
    if (res.solution) {
        AlgElem r = field->element(std::move(*res.solution));
        if (!(r.pow(p) == cc)) fail(ErrorCode::InternalInconsistency, "p-th root failed verification");
        out.root = std::move(r);
    } else {
        out.obstruction = std::move(*res.obstruction);
    }
    return out;
}

BinomialResult binomial_irreducible(std::uint64_t p, unsigned m, const AlgElem& a, const AlgebraPtr& field) {
    if (field->ring()->field.characteristic() != p || p == 0) {
        fail(ErrorCode::CharMismatch, "binomial criterion needs characteristic p");
    }
    if (a.is_zero()) fail(ErrorCode::InvalidArgument, "binomial criterion needs a nonzero constant term");
    if (m == 0) fail(ErrorCode::InvalidArgument, "binomial criterion needs m >= 1");
    BinomialResult out;
    PthRoot r = pth_root(field, a);
    if (r.root) {
        out.irreducible = false;
        out.root = r.root;
        return out;
    }
    IrreducibilityCert cert;
    cert.method = CertMethod::BinomialCriterion;
    cert.p = p;
    cert.m = m;
    cert.obstruction = std::move(r.obstruction);
    if (cert.obstruction.empty()) {
        // The F0 fast path proved it directly: a has an exponent prime to p.
        cert.witness = "constant term is not a p-th power (exponent not divisible by p)";
    } else {
        cert.witness = "constant term is not a p-th power (left-kernel obstruction)";
    }
    cert.scope = "tower";
    out.irreducible = true;
    out.cert = std::move(cert);
    return out;
}

BinomialResult binomial_irreducible(std::uint64_t p, unsigned m, const AlgElem& a, const FieldTower& tower) {
    return binomial_irreducible(p, m, a, tower.algebra());
}

// ---------------------------------------------------------------------------
// Quadratics and multiquadratic fields.

std::pair<mpz_class, mpq_class> squarefree_part(const mpq_class& a) {
    if (sgn(a) == 0) fail(ErrorCode::InvalidArgument, "squarefree part of zero");
    mpz_class n = a.get_num() * a.get_den();
    int sign = sgn(n);
    n = abs(n);
    mpz_class s = 1, r = 1;
    for (mpz_class d = 2; d * d <= n; ++d) {
        while (n % (d * d) == 0) {
            n /= d * d;
            r *= d;
        }
        if (n % d == 0) {
            s *= d;
            n /= d;
        }
    }
    s *= n;
    if (sign < 0) s = -s;
    // a = s * (r / den)^2.
    mpq_class root(r, a.get_den());
    root.canonicalize();
    return {s, root};
}

namespace {

bool is_rational_square(const mpq_class& v, mpq_class* root) {
    if (sgn(v) < 0) return false;
    if (!mpz_perfect_square_p(v.get_num_mpz_t()) || !mpz_perfect_square_p(v.get_den_mpz_t())) return false;
    if (root) {
        mpz_class n, d;
        mpz_sqrt(n.get_mpz_t(), v.get_num_mpz_t());
        mpz_sqrt(d.get_mpz_t(), v.get_den_mpz_t());
        *root = mpq_class(n, d);
        root->canonicalize();
    }
    return true;
}

mpq_class subset_product(const std::vector<mpz_class>& gens, std::size_t mask) {
    mpq_class prod = 1;
    for (std::size_t i = 0; i < gens.size(); ++i) {
        if (mask & (std::size_t{1} << i)) prod *= gens[i];
    }
    return prod;
}

void check_generators(const std::vector<mpz_class>& gens) {
    if (gens.size() > 20) fail(ErrorCode::BadGenerators, "too many multiquadratic generators");
    for (const auto& d : gens) {
        if (d == 0 || d == 1 || squarefree_part(mpq_class(d)).first != d) {
            fail(ErrorCode::BadGenerators, "generator " + d.get_str() + " is not a squarefree integer other than 0, 1");
        }
    }
    for (std::size_t mask = 1; mask < (std::size_t{1} << gens.size()); ++mask) {
        if (is_rational_square(subset_product(gens, mask), nullptr)) {
            fail(ErrorCode::BadGenerators, "multiquadratic generators are dependent modulo squares");
        }
    }
}

bool rational_value(const AlgElem& a, mpq_class& out) {
    if (!a.in_base()) return false;
    const RatFunc& r = a.coords()[0];
    if (!r.is_constant()) return false;
    if (r.is_zero()) {
        out = 0;
        return true;
    }
    Scalar s = r.num().constant_value();
    if (!s.is_rational()) return false;
    out = s.as_rational();
    return true;
}

AlgElem rational_elem(const AlgebraPtr& field, const mpq_class& q) {
    return field->scalar(RatFunc::constant(field->ring(), Scalar(q)));
}

}  // namespace

std::optional<MultiquadraticRoot> sqrt_in_multiquadratic(const mpq_class& a, const std::vector<mpz_class>& gens) {
    check_generators(gens);
    if (sgn(a) == 0) return MultiquadraticRoot{0, {}};
    for (std::size_t mask = 0; mask < (std::size_t{1} << gens.size()); ++mask) {
        mpq_class q;
        if (is_rational_square(a / subset_product(gens, mask), &q)) {
            MultiquadraticRoot r{q, {}};
            for (std::size_t i = 0; i < gens.size(); ++i) {
                if (mask & (std::size_t{1} << i)) r.subset.push_back(i);
            }
            return r;
        }
    }
    return std::nullopt;
}

std::optional<MultiquadraticData> multiquadratic_data(const AlgebraPtr& field) {
    if (field->ring()->field.characteristic() != 0 || field->ring()->arity() != 0) return std::nullopt;
    MultiquadraticData data;
    for (std::size_t g = 0; g < field->num_gens(); ++g) {
        const auto& rel = field->relation(g);
        if (rel.size() != 2) return std::nullopt;
        mpq_class c, b;
        if (!rational_value(rel[0], c) || !rational_value(rel[1], b)) return std::nullopt;
        mpq_class disc = b * b - 4 * c;
        if (sgn(disc) == 0) return std::nullopt;
        auto [d, r] = squarefree_part(disc);
        // (2*gamma + b)^2 = disc = d r^2.
        AlgElem gamma = field->gen(g);
        AlgElem s = (gamma + gamma + rational_elem(field, b)).scaled(
            RatFunc::constant(field->ring(), Scalar(mpq_class(1 / r))));
        data.radicands.push_back(d);
        data.sqrt_elems.push_back(s);
    }
    return data;
}

SqrtResult sqrt_in_field(const AlgebraPtr& field, const AlgElem& a0) {
    SqrtResult out;
    AlgElem a = field->embed(a0);
    const std::uint64_t p = field->ring()->field.characteristic();
    if (a.is_zero()) {
        out.decided = true;
        out.root = a;
        return out;
    }
    if (is_finite(field)) {
        AlgPoly X = AlgPoly::x(field->one());
        AlgPoly f = X * X - AlgPoly::constant(field->one(), a);
        out.decided = true;
        for (auto& [g, e] : factor_finite(field, f)) {
            if (g.deg() == 1) {
                out.root = -g.coeff(0);
                return out;
            }
        }
        out.cert.method = CertMethod::FiniteFieldFactorization;
        out.cert.scope = "finite-field";
        out.cert.witness = "X^2 - a has no linear factor over F_q";
        return out;
    }
    if (auto mq = multiquadratic_data(field)) {
        mpq_class q;
        if (!rational_value(a, q)) {
            out.reason = "element is not rational";
            return out;
        }
        out.decided = true;
        auto r = sqrt_in_multiquadratic(q, mq->radicands);
        if (r) {
            AlgElem root = rational_elem(field, r->q);
            for (auto i : r->subset) root = root * mq->sqrt_elems[i];
            if (!(root * root == a)) fail(ErrorCode::InternalInconsistency, "multiquadratic square root failed verification");
            out.root = root;
            return out;
        }
        out.cert.method = CertMethod::QuadraticRootSearch;
        out.cert.scope = "multiquadratic";
        out.cert.discriminant = q;
        out.cert.radicands = mq->radicands;
        out.cert.witness = q.get_str() + " times no subset product of the radicands is a rational square";
        return out;
    }
    if (field->num_gens() == 0 && p != 2) {
        out.decided = true;
        if (auto r = a.coords()[0].sqrt()) {
            out.root = field->scalar(*r);
            return out;
        }
        out.cert.method = CertMethod::QuadraticRootSearch;
        out.cert.scope = "function-field";
        out.cert.witness = a.to_string() + " is not a square of a rational function";
        return out;
    }
    out.reason = "no square-root oracle for this field";
    return out;
}

QuadraticFactors factor_quadratic(const AlgPoly& f0, const AlgebraPtr& field) {
    if (f0.is_zero() || f0.deg() != 2) fail(ErrorCode::InvalidArgument, "factor_quadratic needs a degree-2 polynomial");
    AlgPoly f = f0.monic();
    const AlgElem& one = f.one();
    const AlgElem b = field->embed(f.coeff(1));
    const AlgElem c = field->embed(f.coeff(0));
    const std::uint64_t p = field->ring()->field.characteristic();
    const AlgPoly X = AlgPoly::x(one);
    QuadraticFactors out;
    if (is_finite(field) && field->dim() == 1) {
        // Root search over the prime field.
        std::vector<AlgElem> roots;
        for (std::uint64_t r = 0; r < p && roots.size() < 2; ++r) {
            AlgElem x = field->scalar(RatFunc::constant(field->ring(), Scalar(r, p)));
            if (f.evaluate(x).is_zero()) roots.push_back(x);
        }
        if (roots.empty()) {
            IrreducibilityCert cert;
            cert.method = CertMethod::QuadraticRootSearch;
            cert.scope = "prime-field";
            cert.witness = "no root among the " + std::to_string(p) + " residues";
            out.irreducible = true;
            out.cert = cert;
            return out;
        }
        AlgElem r1 = roots[0];
        AlgElem r2 = (field->zero() - b) - r1;
        out.factors = {X - AlgPoly::constant(one, r1), X - AlgPoly::constant(one, r2)};
        return out;
    }
    if (is_finite(field)) {
        auto fac = factor_finite(field, f);
        if (fac.size() == 1 && fac[0].second == 1) {
            IrreducibilityCert cert;
            cert.method = CertMethod::FiniteFieldFactorization;
            cert.scope = "finite-field";
            cert.witness = "irreducible over F_q";
            out.irreducible = true;
            out.cert = cert;
            return out;
        }
        for (auto& [g, e] : fac) {
            for (unsigned i = 0; i < e; ++i) out.factors.push_back(g);
        }
        return out;
    }
    if (p == 2) fail(ErrorCode::UnsupportedField, "quadratics in characteristic 2 need a finite field");
    AlgElem disc = b * b - field->from_int(4) * c;
    SqrtResult s = sqrt_in_field(field, disc);
    if (!s.decided) fail(ErrorCode::UnsupportedField, s.reason);
    if (!s.root) {
        out.irreducible = true;
        out.cert = s.cert;
        return out;
    }
    AlgElem half = field->from_int(2).inverse();
    AlgElem r1 = (field->zero() - b + *s.root) * half;
    AlgElem r2 = (field->zero() - b - *s.root) * half;
    out.factors = {X - AlgPoly::constant(one, r1), X - AlgPoly::constant(one, r2)};
    return out;
}

// ---------------------------------------------------------------------------
// Registry.

namespace {

bool binomial_shape(const AlgPoly& f, std::uint64_t p, unsigned& m) {
    if (p == 0 || f.is_zero()) return false;
    std::size_t d = f.deg();
    m = 0;
    while (d > 1 && d % p == 0) {
        d /= p;
        ++m;
    }
    if (d != 1 || m == 0) return false;
    for (std::size_t j = 1; j < f.deg(); ++j) {
        if (!f.coeff(j).is_zero()) return false;
    }
    return !f.coeff(0).is_zero();
}

}  // namespace

Factorization factor_over(const AlgebraPtr& field, const AlgPoly& f0) {
    Factorization out;
    if (f0.is_zero()) fail(ErrorCode::InvalidArgument, "cannot factor the zero polynomial");
    AlgPoly f = f0.monic();
    const AlgElem& one = f.one();
    const std::uint64_t p = field->ring()->field.characteristic();
    if (f.is_constant()) {
        out.supported = true;
        return out;
    }
    if (f.deg() == 1) {
        out.supported = true;
        out.factors = {{f, 1}};
        IrreducibilityCert cert;
        cert.method = CertMethod::DegreeOne;
        cert.witness = "linear polynomial";
        out.cert = cert;
        return out;
    }
    if (is_finite(field)) {
        out.supported = true;
        out.factors = factor_finite(field, f);
        if (out.factors.size() == 1 && out.factors[0].second == 1) {
            IrreducibilityCert cert;
            cert.method = CertMethod::FiniteFieldFactorization;
            cert.scope = "finite-field";
            cert.field_order = 1;
            for (std::size_t i = 0; i < field->dim(); ++i) cert.field_order *= p;
            cert.witness = "irreducible over F_" + std::to_string(cert.field_order);
            out.cert = cert;
        }
        return out;
    }
    // F_q is algebraically closed in F_q(T), so F_q-polynomials factor as over F_q.
    if (auto constants = constant_field(field)) {
        if (auto g = to_constant_field(f, *constants)) {
            Factorization inner = factor_over(*constants, *g);
            out.supported = true;
            for (auto& [h, e] : inner.factors) out.factors.push_back({from_constant_field(h, field), e});
            if (out.factors.size() == 1 && out.factors[0].second == 1) {
                IrreducibilityCert cert;
                cert.method = CertMethod::FiniteFieldFactorization;
                cert.scope = "constant-field";
                cert.field_order = 1;
                for (std::size_t i = 0; i < (*constants)->dim(); ++i) cert.field_order *= p;
                cert.witness = "irreducible over the constant field F_" + std::to_string(cert.field_order);
                out.cert = cert;
            }
            return out;
        }
    }
    unsigned m = 0;
    if (binomial_shape(f, p, m)) {
        AlgElem a = field->zero() - field->embed(f.coeff(0));
        BinomialResult r = binomial_irreducible(p, m, a, field);
        out.supported = true;
        if (r.irreducible) {
            out.factors = {{f, 1}};
            out.cert = r.cert;
            return out;
        }
        // X^{p^m} - a = (X^{p^{m-1}} - r)^p.
        std::size_t d = 1;
        for (unsigned i = 1; i < m; ++i) d *= p;
        AlgPoly g = AlgPoly::monomial(one, one, d) - AlgPoly::constant(one, *r.root);
        Factorization inner = factor_over(field, g);
        if (!inner.supported) return inner;
        for (auto& [h, e] : inner.factors) out.factors.push_back({h, static_cast<unsigned>(e * p)});
        return out;
    }
    if (f.deg() == 2) {
        try {
            QuadraticFactors q = factor_quadratic(f, field);
            out.supported = true;
            if (q.irreducible) {
                out.factors = {{f, 1}};
                out.cert = q.cert;
            } else if (q.factors[0] == q.factors[1]) {
                out.factors = {{q.factors[0], 2}};
            } else {
                if (poly_less(q.factors[1], q.factors[0])) std::swap(q.factors[0], q.factors[1]);
                out.factors = {{q.factors[0], 1}, {q.factors[1], 1}};
            }
            return out;
        } catch (const Error& e) {
            if (e.code() != ErrorCode::UnsupportedField) throw;
            out.reason = e.what();
            return out;
        }
    }
    out.reason = "no oracle covers degree-" + std::to_string(f.deg()) + " polynomials over this field";
    return out;
}

IrreducibilityResult certify_irreducible(const AlgebraPtr& field, const AlgPoly& f) {
    IrreducibilityResult out;
    Factorization fac = factor_over(field, f);
    if (!fac.supported) {
        out.status = IrreducibilityResult::Status::Uncertifiable;
        out.reason = fac.reason;
        return out;
    }
    if (fac.cert) {
        out.status = IrreducibilityResult::Status::Irreducible;
        out.cert = fac.cert;
        return out;
    }
    out.status = IrreducibilityResult::Status::Reducible;
    out.factor = fac.factors.front().first;
    return out;
}

IrreducibilityResult certify_irreducible(const FieldTower& tower, const AlgPoly& f) {
    return certify_irreducible(tower.algebra(), f);
}

bool replay_certificate(const AlgebraPtr& field, const AlgPoly& f0, const IrreducibilityCert& cert) {
    if (f0.is_zero()) return false;
    AlgPoly f = f0.monic();
    const std::uint64_t p = field->ring()->field.characteristic();
    switch (cert.method) {
        case CertMethod::DegreeOne:
            return f.deg() == 1;
        case CertMethod::FiniteFieldFactorization:
            if (cert.scope == "constant-field") {
                auto constants = constant_field(field);
                if (!constants) return false;
                auto g = to_constant_field(f, *constants);
                return g && finite_irreducible(*constants, *g);
            }
            if (!is_finite(field)) return false;
            return finite_irreducible(field, f);
        case CertMethod::BinomialCriterion: {
            unsigned m = 0;
            if (!binomial_shape(f, p, m) || p != cert.p || m != cert.m) return false;
            AlgElem a = field->zero() - field->embed(f.coeff(0));
            if (cert.obstruction.empty()) {
                // F0 case: some exponent of a's normalized form is prime to p.
                return field->dim() == 1 && !a.coords()[0].pth_root();
            }
            PthRootSystem sys = pth_root_system(field, a);
            const RatFunc zero(field->ring());
            if (cert.obstruction.size() != sys.m.size()) return false;
            std::vector<RatFunc> y;
            for (const auto& r : cert.obstruction) y.push_back(r.in_ring(field->ring()));
            for (std::size_t j = 0; j < field->dim(); ++j) {
                RatFunc acc = zero;
                for (std::size_t i = 0; i < y.size(); ++i) {
                    if (!y[i].is_zero() && !sys.m[i][j].is_zero()) acc = acc + y[i] * sys.m[i][j];
                }
                if (!acc.is_zero()) return false;
            }
            return !dot(y, sys.v, zero).is_zero();
        }
        case CertMethod::QuadraticRootSearch: {
            if (f.deg() != 2) return false;
            if (cert.scope == "prime-field") {
                if (!is_finite(field) || field->dim() != 1) return false;
                for (std::uint64_t r = 0; r < p; ++r) {
                    if (f.evaluate(field->scalar(RatFunc::constant(field->ring(), Scalar(r, p)))).is_zero()) return false;
                }
                return true;
            }
            AlgElem b = field->embed(f.coeff(1));
            AlgElem disc = b * b - field->from_int(4) * field->embed(f.coeff(0));
            if (cert.scope == "multiquadratic") {
                auto mq = multiquadratic_data(field);
                mpq_class q;
                if (!mq || mq->radicands != cert.radicands || !rational_value(disc, q) || q != cert.discriminant) {
                    return false;
                }
                for (std::size_t mask = 0; mask < (std::size_t{1} << cert.radicands.size()); ++mask) {
                    if (is_rational_square(q / subset_product(cert.radicands, mask), nullptr)) return false;
                }
                return true;
            }
            if (cert.scope == "function-field") {
                return field->num_gens() == 0 && p != 2 && !disc.coords()[0].sqrt();
            }
            return false;
        }
    }
    return false;
}

}  // namespace regtensor
