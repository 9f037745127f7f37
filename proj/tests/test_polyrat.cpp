#include <doctest.h>

#include <random>

#include "error.hpp"
#include "multipoly.hpp"
#include "ratfunc.hpp"
#include "unipoly.hpp"

using namespace regtensor;

namespace {

struct Ring2 {
    RingPtr ring;
    MultiPoly x, y, one;
    explicit Ring2(PrimeField f)
        : ring(make_ring(f, {"x", "y"})),
          x(MultiPoly::variable(ring, 0)),
          y(MultiPoly::variable(ring, 1)),
          one(MultiPoly::from_int(ring, 1)) {}
};

MultiPoly random_poly(const RingPtr& ring, std::mt19937_64& rng, int max_terms, std::uint32_t max_exp) {
    std::uniform_int_distribution<int> nterms(1, max_terms);
    std::uniform_int_distribution<std::uint32_t> de(0, max_exp);
    std::uniform_int_distribution<long long> dc(-5, 5);
    std::vector<MultiPoly::Term> terms;
    int n = nterms(rng);
    for (int i = 0; i < n; ++i) {
        Exponents e(ring->arity());
        for (auto& v : e) v = de(rng);
        terms.push_back({e, ring->field.from_int(dc(rng))});
    }
    return MultiPoly::from_terms(ring, terms);
}

}  // namespace

TEST_CASE("multivariate arithmetic and printing") {
    Ring2 r2(PrimeField::fp(2));
    MultiPoly s = r2.x + r2.y;
    CHECK(s * s == r2.x * r2.x + r2.y * r2.y);
    CHECK((s * s).to_string() == "x^2 + y^2");
    Ring2 rq(PrimeField::rationals());
    MultiPoly f = rq.x * rq.x * rq.y + MultiPoly::from_int(rq.ring, 3);
    CHECK(f.to_string() == "x^2*y + 3");
    CHECK((rq.x - rq.y * MultiPoly::from_int(rq.ring, 2)).to_string() == "x - 2*y");
    CHECK(((rq.x * rq.x - rq.y * rq.y).exact_div(rq.x - rq.y)) == rq.x + rq.y);
    CHECK_THROWS_AS((rq.x * rq.x + rq.one).exact_div(rq.x + rq.one), Error);
}

TEST_CASE("multivariate gcd") {
    Ring2 rq(PrimeField::rationals());
    CHECK(gcd(rq.x * rq.x * rq.y, rq.x * rq.y * rq.y) == rq.x * rq.y);
    CHECK(gcd(rq.x * rq.x - rq.y * rq.y, rq.x - rq.y) == rq.x - rq.y);
    Ring2 r2(PrimeField::fp(2));
    CHECK(gcd(r2.x * r2.x + r2.y * r2.y, r2.x + r2.y) == r2.x + r2.y);
    CHECK(gcd(MultiPoly(rq.ring), MultiPoly(rq.ring)).is_zero());
}

TEST_CASE("random multivariate gcd divides and cofactors are coprime" * doctest::test_suite("properties")) {
    std::mt19937_64 rng(7);
    for (PrimeField f : {PrimeField::rationals(), PrimeField::fp(3)}) {
        RingPtr ring = make_ring(f, {"x", "y", "z"});
        for (int i = 0; i < 60; ++i) {
            MultiPoly c = random_poly(ring, rng, 3, 2);
            MultiPoly a = random_poly(ring, rng, 3, 2) * c;
            MultiPoly b = random_poly(ring, rng, 3, 2) * c;
            if (a.is_zero() || b.is_zero()) continue;
            MultiPoly g = gcd(a, b);
            REQUIRE(a.try_div(g));
            REQUIRE(b.try_div(g));
            CHECK(gcd(a.exact_div(g), b.exact_div(g)).is_one());
            if (!c.is_zero()) CHECK(g.try_div(c.monic()));
        }
    }
}

TEST_CASE("rational function normalization") {
    Ring2 rq(PrimeField::rationals());
    RatFunc r(rq.x * rq.x - rq.y * rq.y, (rq.x - rq.y) * MultiPoly::from_int(rq.ring, 2));
    CHECK(r.den().is_one());
    CHECK(r.num() == (rq.x + rq.y).scaled(Scalar::rational(1, 2)));
    RatFunc s(rq.x, rq.y.scaled(Scalar::rational(3)));
    CHECK(s.den() == rq.y);
    CHECK(RatFunc(s.num(), s.den()) == s);
    CHECK((s * s.inverse()).is_one());
    CHECK_THROWS_AS(RatFunc(rq.x, MultiPoly(rq.ring)), Error);
}

TEST_CASE("random rational function normalization is idempotent") {
    std::mt19937_64 rng(11);
    RingPtr ring = make_ring(PrimeField::rationals(), {"s", "t"});
    for (int i = 0; i < 100; ++i) {
        MultiPoly n = random_poly(ring, rng, 3, 2);
        MultiPoly d = random_poly(ring, rng, 3, 2);
        if (d.is_zero()) continue;
        RatFunc r(n, d);
        RatFunc again(r.num(), r.den());
        CHECK(again == r);
        if (!r.den().is_constant()) CHECK(r.den().leading_coef().is_one());
        CHECK(gcd(r.num(), r.den()).is_one());
    }
}

TEST_CASE("p-th power test") {
    Ring2 r2(PrimeField::fp(2));
    RatFunc x2(r2.x * r2.x);
    auto root = x2.pth_root();
    REQUIRE(root);
    CHECK(*root == RatFunc(r2.x));
    CHECK(!RatFunc(r2.x).pth_root());
    RatFunc h(r2.x * r2.x + r2.y * r2.y, r2.y * r2.y);
    auto hr = h.pth_root();
    REQUIRE(hr);
    CHECK(*hr == RatFunc(r2.x + r2.y, r2.y));
    CHECK(hr->pow(2) == h);
}

TEST_CASE("random p-th powers have p-th roots" * doctest::test_suite("properties")) {
    std::mt19937_64 rng(3);
    for (std::uint64_t p : {2, 3, 5}) {
        RingPtr ring = make_ring(PrimeField::fp(p), {"x", "y"});
        for (int i = 0; i < 40; ++i) {
            MultiPoly n = random_poly(ring, rng, 3, 2);
            MultiPoly d = random_poly(ring, rng, 2, 2);
            if (d.is_zero()) continue;
            RatFunc r(n, d);
            RatFunc h = r.pow(p);
            auto root = h.pth_root();
            REQUIRE(root);
            CHECK(root->pow(p) == h);
            CHECK(*root == r);
        }
    }
}

TEST_CASE("square roots of rational functions") {
    Ring2 rq(PrimeField::rationals());
    MultiPoly f = (rq.x + rq.y.scaled(Scalar::rational(2))) * (rq.x - rq.one);
    RatFunc sq(f * f, rq.y * rq.y);
    auto r = sq.sqrt();
    REQUIRE(r);
    CHECK(*r * *r == sq);
    CHECK(!RatFunc(rq.x * rq.x + rq.one).sqrt());
}

TEST_CASE("univariate polynomials over a rational function field") {
    RingPtr ring = make_ring(PrimeField::fp(2), {"t"});
    RatFunc one = RatFunc::from_int(ring, 1);
    RatFunc t = RatFunc::variable(ring, 0);
    using P = UniPoly<RatFunc>;
    P X = P::x(one);
    P T = P::constant(one, t);
    P f = (X - T) * (X + T);
    CHECK(f == X * X + P::constant(one, t * t));
    CHECK(f.to_string() == "X^2 + t^2");
    CHECK(f.evaluate(t).is_zero());
    CHECK(gcd(f, X + T) == X + T);
    CHECK(f.derivative().is_zero());
    CHECK(gcd(f, f.derivative()) == f);
    CHECK(!is_squarefree(f));
    CHECK(f.degree() == Degree::of(2));
    CHECK(P(one).degree().is_neg_inf());
    CHECK(P(one).degree() < Degree::of(0));
    CHECK_THROWS_AS(gcd(P(one), P(one)), Error);
}

TEST_CASE("univariate gcd over Q") {
    Scalar one = Scalar::rational(1);
    using P = UniPoly<Scalar>;
    P X = P::x(one);
    P c1 = P::constant(one, one);
    CHECK(gcd(X * X - c1, X - c1) == X - c1);
    auto [g, s, t] = ext_gcd(X * X - c1, X + c1 + c1);
    CHECK(g == c1);
    CHECK(s * (X * X - c1) + t * (X + c1 + c1) == g);
}

TEST_CASE("random univariate gcd properties" * doctest::test_suite("properties")) {
    std::mt19937_64 rng(99);
    std::uniform_int_distribution<int> dc(0, 6);
    std::uniform_int_distribution<int> dd(0, 5);
    Scalar one(1, 7);
    using P = UniPoly<Scalar>;
    auto draw = [&] {
        std::vector<Scalar> c;
        int n = dd(rng) + 1;
        for (int i = 0; i < n; ++i) c.push_back(Scalar(static_cast<std::uint64_t>(dc(rng)), 7));
        return P(one, c);
    };
    for (int i = 0; i < 150; ++i) {
        P a = draw(), b = draw();
        if (a.is_zero() && b.is_zero()) continue;
        P g = gcd(a, b);
        CHECK((a % g).is_zero());
        CHECK((b % g).is_zero());
        if (!a.is_zero() && !b.is_zero()) CHECK(gcd(a / g, b / g).is_constant());
        auto [g2, s, t] = ext_gcd(a, b);
        CHECK(g2 == g);
        CHECK(s * a + t * b == g);
    }
}

TEST_CASE("separability split") {
    RingPtr ring = make_ring(PrimeField::fp(2), {"a"});
    RatFunc one = RatFunc::from_int(ring, 1);
    RatFunc a = RatFunc::variable(ring, 0);
    using P = UniPoly<RatFunc>;
    P X = P::x(one);
    P f = X.pow(4) - P::constant(one, a);
    auto [g, e] = separability_split(f);
    CHECK(e == 2);
    CHECK(g == X - P::constant(one, a));
    CHECK(g.compose(X.pow(4)) == f);
    CHECK(is_squarefree(g));

    Scalar o2(1, 2);
    using S = UniPoly<Scalar>;
    S Y = S::x(o2);
    S h = Y * Y + Y + S::constant(o2, o2);
    auto [g2, e2] = separability_split(h);
    CHECK(e2 == 0);
    CHECK(g2 == h);
    CHECK_THROWS_AS(separability_split(S::constant(o2, o2)), Error);
}

TEST_CASE("random separability split reconstructs" * doctest::test_suite("properties")) {
    std::mt19937_64 rng(5);
    for (std::uint64_t p : {2, 3}) {
        Scalar one(1, p);
        using S = UniPoly<Scalar>;
        std::uniform_int_distribution<std::uint64_t> dc(0, p - 1);
        for (int i = 0; i < 50; ++i) {
            std::vector<Scalar> c;
            for (int k = 0; k < 4; ++k) c.push_back(Scalar(dc(rng), p));
            c.push_back(one);
            S base(one, c);
            S f = base.compose(S::x(one).pow(i % 3 == 0 ? 1 : p * (i % 2 + 1) * (p == 2 ? 1 : 1)));
            if (f.is_constant()) continue;
            auto [g, e] = separability_split(f);
            std::uint64_t q = 1;
            for (unsigned k = 0; k < e; ++k) q *= p;
            CHECK(g.compose(S::x(one).pow(q)) == f);
            bool has_prime_to_p = false;
            for (std::size_t k = 0; k < g.coeffs().size(); ++k) {
                if (k % p != 0 && !g.coeffs()[k].is_zero()) has_prime_to_p = true;
            }
            CHECK(has_prime_to_p);
        }
    }
}
