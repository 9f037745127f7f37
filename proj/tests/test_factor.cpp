#include <doctest.h>

#include <random>

#include "error.hpp"
#include "factor.hpp"
#include "tower_helpers.hpp"

using namespace regtensor;
using namespace regtensor::testing;

namespace {

FpPoly fp(std::uint64_t p, const std::vector<std::uint64_t>& c) {
    std::vector<Scalar> s;
    for (auto v : c) s.push_back(Scalar(v % p, p));
    return FpPoly(Scalar(1, p), std::move(s));
}

// Independent irreducibility oracle: trial division by every monic polynomial
// of degree at most deg/2.
bool brute_irreducible(const FpPoly& f) {
    const std::uint64_t p = f.one().characteristic();
    const std::size_t n = f.deg();
    if (n == 0) return false;
    for (std::size_t d = 1; 2 * d <= n; ++d) {
        std::uint64_t count = 1;
        for (std::size_t i = 0; i < d; ++i) count *= p;
        for (std::uint64_t code = 0; code < count; ++code) {
            std::vector<std::uint64_t> c;
            std::uint64_t rest = code;
            for (std::size_t i = 0; i < d; ++i) {
                c.push_back(rest % p);
                rest /= p;
            }
            c.push_back(1);
            if ((f % fp(p, c)).is_zero()) return false;
        }
    }
    return true;
}

FpPoly expand(const std::vector<std::pair<FpPoly, unsigned>>& fac, const Scalar& lead) {
    FpPoly acc = FpPoly::constant(lead / lead, lead);
    for (const auto& [g, e] : fac) acc = acc * g.pow(e);
    return acc;
}

}  // namespace

TEST_CASE("finite field factorization examples") {
    auto f1 = factor_finite_field(fp(2, {1, 0, 1}));
    REQUIRE(f1.size() == 1);
    CHECK(f1[0].first.to_string() == "X + 1");
    CHECK(f1[0].second == 2);

    auto f2 = factor_finite_field(fp(2, {1, 1, 1}));
    REQUIRE(f2.size() == 1);
    CHECK(f2[0].second == 1);
    CHECK(finite_field_irreducible(fp(2, {1, 1, 1})));

    auto f3 = factor_finite_field(fp(3, {0, 2, 0, 1}));
    REQUIRE(f3.size() == 3);
    CHECK(f3[0].first.to_string() == "X");
    CHECK(f3[1].first.to_string() == "X + 1");
    CHECK(f3[2].first.to_string() == "X + 2");
}

TEST_CASE("finite field factorization re-multiplies and matches brute force" * doctest::test_suite("properties")) {
    std::mt19937_64 rng(11);
    int cases = 0;
    for (std::uint64_t p : {2, 3, 5, 7}) {
        for (int round = 0; round < 40; ++round) {
            std::uniform_int_distribution<std::size_t> dd(1, 8);
            std::uniform_int_distribution<std::uint64_t> dc(0, p - 1);
            std::size_t deg = dd(rng);
            std::vector<std::uint64_t> c;
            for (std::size_t i = 0; i < deg; ++i) c.push_back(dc(rng));
            c.push_back(1 + dc(rng) % (p - 1));
            FpPoly f = fp(p, c);
            auto fac = factor_finite_field(f);
            CHECK(expand(fac, f.lead()) == f);
            for (const auto& [g, e] : fac) {
                CHECK(g.is_monic());
                CHECK(brute_irreducible(g));
                CHECK(finite_field_irreducible(g));
            }
            CHECK(finite_field_irreducible(f) == brute_irreducible(f));
            ++cases;
        }
    }
    CHECK(cases >= 100);
}

TEST_CASE("binomials over F2(t)") {
    FieldTower t = FieldTower::prime(PrimeField::fp(2)).adjoin_transcendental("t");
    auto r1 = certify_irreducible(t, tower_poly(t, {"t", "0", "1"}));
    CHECK(r1.status == IrreducibilityResult::Status::Irreducible);
    REQUIRE(r1.cert);
    CHECK(r1.cert->method == CertMethod::BinomialCriterion);
    CHECK(replay_certificate(t.algebra(), tower_poly(t, {"t", "0", "1"}), *r1.cert));

    Factorization f2 = factor_over(t.algebra(), tower_poly(t, {"t^2", "0", "1"}));
    REQUIRE(f2.supported);
    REQUIRE(f2.factors.size() == 1);
    CHECK(f2.factors[0].first.to_string() == "X + t");
    CHECK(f2.factors[0].second == 2);

    auto r3 = certify_irreducible(t, tower_poly(t, {"t", "0", "0", "0", "1"}));
    CHECK(r3.status == IrreducibilityResult::Status::Irreducible);
    CHECK(r3.cert->m == 2);

    // The certificate does not transfer to a different binomial.
    CHECK_FALSE(replay_certificate(t.algebra(), tower_poly(t, {"t^2", "0", "1"}), *r1.cert));
    CHECK_THROWS_AS(binomial_irreducible(3, 1, t.one(), t.algebra()), Error);
}

TEST_CASE("p-th roots inside an algebraic tower") {
    FieldTower t = FieldTower::prime(PrimeField::fp(2)).adjoin_transcendental("t");
    t = t.adjoin_root("s", tower_poly(t, {"t", "0", "1"}));
    PthRoot r = pth_root(t.algebra(), tower_elem(t, "t"));
    REQUIRE(r.root);
    CHECK(*r.root == t.generator("s"));
    PthRoot none = pth_root(t.algebra(), t.generator("s"));
    CHECK_FALSE(none.root);
    CHECK_FALSE(none.obstruction.empty());
    auto cert = certify_irreducible(t, tower_poly(t, {"s", "0", "1"}));
    REQUIRE(cert.status == IrreducibilityResult::Status::Irreducible);
    CHECK(replay_certificate(t.algebra(), tower_poly(t, {"s", "0", "1"}), *cert.cert));
}

TEST_CASE("p-th roots round trip in F3(x, y)" * doctest::test_suite("properties")) {
    FieldTower t = FieldTower::prime(PrimeField::fp(3)).adjoin_transcendental("x").adjoin_transcendental("y");
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<int> dc(0, 2), de(0, 3);
    for (int i = 0; i < 100; ++i) {
        std::string num = std::to_string(dc(rng) + 1) + "*x^" + std::to_string(de(rng)) + " + y^" + std::to_string(de(rng));
        std::string den = "x + " + std::to_string(dc(rng)) + "*y^" + std::to_string(de(rng)) + " + 1";
        AlgElem r = tower_elem(t, "(" + num + ")/(" + den + ")");
        PthRoot back = pth_root(t.algebra(), r.pow(3));
        REQUIRE(back.root);
        CHECK(*back.root == r);
    }
}

TEST_CASE("square roots in multiquadratic fields") {
    auto r1 = sqrt_in_multiquadratic(6, {2, 3});
    REQUIRE(r1);
    CHECK(r1->q == 1);
    CHECK(r1->subset == std::vector<std::size_t>{0, 1});
    CHECK_FALSE(sqrt_in_multiquadratic(2, {3}));
    auto r3 = sqrt_in_multiquadratic(4, {});
    REQUIRE(r3);
    CHECK(r3->q == 2);
    CHECK(r3->subset.empty());
    CHECK_THROWS_AS(sqrt_in_multiquadratic(2, {8}), Error);
    CHECK_THROWS_AS(sqrt_in_multiquadratic(2, {2, 3, 6}), Error);
    auto neg = sqrt_in_multiquadratic(-4, {-1});
    REQUIRE(neg);
    CHECK(neg->q == 2);
}

TEST_CASE("quadratics over multiquadratic fields") {
    FieldTower q = FieldTower::prime(PrimeField::rationals());
    FieldTower qi = q.adjoin_root("i", tower_poly(q, {"1", "0", "1"}));
    Factorization f = factor_over(qi.algebra(), tower_poly(qi, {"1", "0", "1"}));
    REQUIRE(f.supported);
    REQUIRE(f.factors.size() == 2);
    CHECK(f.factors[0].first.to_string() == "X + i");
    CHECK(f.factors[1].first.to_string() == "X - i");

    FieldTower q2 = q.adjoin_root("r", tower_poly(q, {"-2", "0", "1"}));
    auto irr = certify_irreducible(q2, tower_poly(q2, {"-3", "0", "1"}));
    CHECK(irr.status == IrreducibilityResult::Status::Irreducible);
    CHECK(replay_certificate(q2.algebra(), tower_poly(q2, {"-3", "0", "1"}), *irr.cert));

    FieldTower q3 = q.adjoin_root("w", tower_poly(q, {"3", "0", "1"}));
    Factorization f3 = factor_over(q3.algebra(), tower_poly(q3, {"1", "1", "1"}));
    REQUIRE(f3.supported);
    CHECK(f3.factors.size() == 2);
    for (const auto& [g, e] : f3.factors) {
        CHECK(g.deg() == 1);
        CHECK(tower_poly(q3, {"1", "1", "1"}).evaluate(-g.coeff(0)).is_zero());
    }

    // Degree 3 over Q is outside the oracle's coverage.
    auto unk = certify_irreducible(q, tower_poly(q, {"-2", "0", "0", "1"}));
    CHECK(unk.status == IrreducibilityResult::Status::Uncertifiable);
}

TEST_CASE("quadratic oracle agrees with finite field factorization") {
    int cases = 0;
    for (std::uint64_t p : {2, 3, 5, 7}) {
        FieldTower t = FieldTower::prime(PrimeField::fp(p));
        for (std::uint64_t b = 0; b < p; ++b) {
            for (std::uint64_t c = 0; c < p; ++c) {
                FpPoly f = fp(p, {c, b, 1});
                auto fac = factor_finite_field(f);
                AlgPoly g = tower_poly(t, {std::to_string(c), std::to_string(b), "1"});
                QuadraticFactors q = factor_quadratic(g, t.algebra());
                bool irreducible = fac.size() == 1 && fac[0].second == 1;
                CHECK(q.irreducible == irreducible);
                if (!irreducible) {
                    REQUIRE(q.factors.size() == 2);
                    CHECK((q.factors[0] * q.factors[1]).to_string() == g.to_string());
                } else {
                    CHECK(replay_certificate(t.algebra(), g, *q.cert));
                }
                ++cases;
            }
        }
    }
    CHECK(cases == 4 + 9 + 25 + 49);
}

TEST_CASE("factorization over F4") {
    FieldTower f2 = FieldTower::prime(PrimeField::fp(2));
    FieldTower f4 = f2.adjoin_root("a", tower_poly(f2, {"1", "1", "1"}));
    Factorization f = factor_over(f4.algebra(), tower_poly(f4, {"1", "1", "1"}));
    REQUIRE(f.supported);
    CHECK(f.factors.size() == 2);
    AlgPoly x4 = tower_poly(f4, {"0", "1", "0", "0", "1"});
    Factorization g = factor_over(f4.algebra(), x4);
    REQUIRE(g.factors.size() == 4);
    AlgPoly prod = AlgPoly::constant(f4.one(), f4.one());
    for (const auto& [h, e] : g.factors) prod = prod * h.pow(e);
    CHECK(prod == x4);
    SqrtResult s = sqrt_in_field(f4.algebra(), f4.generator("a"));
    REQUIRE(s.root);
    CHECK(*s.root * *s.root == f4.generator("a"));
}
