#include <doctest.h>

#include <functional>

#include "error.hpp"
#include "tower_helpers.hpp"

using namespace regtensor;
using namespace regtensor::testing;

namespace {

std::optional<ErrorCode> code_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    return std::nullopt;
}

}  // namespace

TEST_CASE("degrees of simple towers") {
    FieldTower base = ambient_base(2, {"t"}, {"t^4"});
    FieldTower k = insep(base, "t");
    CHECK(k.degree(1) == std::optional<std::uint64_t>(4));
    CHECK(k.td() == 1);
    CHECK_FALSE(k.degree(0));

    FieldTower q = FieldTower::prime(PrimeField::rationals());
    FieldTower q2 = q.adjoin_root("r", tower_poly(q, {"-2", "0", "1"}));
    CHECK(q2.degree() == std::optional<std::uint64_t>(2));
}

TEST_CASE("reducible relations are rejected with a factor") {
    FieldTower q = FieldTower::prime(PrimeField::rationals());
    try {
        q.adjoin_root("r", tower_poly(q, {"-4", "0", "1"}));
        FAIL("expected ReducibleMinPoly");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::ReducibleMinPoly);
        CHECK(std::string(e.what()).find("X + 2") != std::string::npos);
    }
    CHECK(code_of([&] { q.adjoin_root("c", tower_poly(q, {"-2", "0", "0", "1"})); }) ==
          ErrorCode::UncertifiableIrreducibility);
}

TEST_CASE("minimal polynomials of elements") {
    FieldTower q = FieldTower::prime(PrimeField::rationals());
    FieldTower t = q.adjoin_root("a", tower_poly(q, {"-2", "0", "1"}));
    t = t.adjoin_root("b", tower_poly(t, {"-3", "0", "1"}));
    AlgPoly mp = t.minpoly_of_element(tower_elem(t, "a + b"), 0);
    CHECK(mp.to_string() == "X^4 - 10*X^2 + 1");
    CHECK(t.minpoly_of_element(t.one(), 0).to_string() == "X - 1");

    FieldTower f = FieldTower::prime(PrimeField::fp(2)).adjoin_transcendental("t");
    FieldTower g = f.adjoin_transcendental("u");
    CHECK(code_of([&] { g.minpoly_of_element(g.generator("u"), 1); }) == ErrorCode::InfiniteDegree);

    FieldTower base = ambient_base(2, {"t"}, {"t^4"});
    FieldTower k = insep(base, "t");
    AlgPoly m2 = k.minpoly_of_element(tower_elem(k, "t^2"), 1);
    CHECK(m2.deg() == 2);
    CHECK(render_element(k, m2.coeff(0)) == "t^4");
}

TEST_CASE("separability classification") {
    FieldTower base = ambient_base(2, {"t"}, {"t^2"});
    FieldTower k = insep(base, "t");
    SeparabilityProfile p = k.classify(1);
    CHECK(p.shape == Shape::InsepOnly);
    REQUIRE(p.insep.size() == 1);
    CHECK(p.insep[0].m == 1);
    CHECK(render_element(k, p.insep[0].a) == "t^2");

    FieldTower q = FieldTower::prime(PrimeField::rationals());
    FieldTower q2 = q.adjoin_root("r", tower_poly(q, {"-2", "0", "1"}));
    CHECK(q2.classify(0).shape == Shape::SeparableOnly);
    CHECK(q2.classify(0).separable_degree == 2);

    FieldTower f3 = FieldTower::prime(PrimeField::fp(3)).adjoin_transcendental("x");
    FieldTower f3s = f3.adjoin_root("s", tower_poly(f3, {"-x", "0", "1"}));
    CHECK(f3s.classify(1).shape == Shape::SeparableOnly);

    FieldTower f2 = FieldTower::prime(PrimeField::fp(2)).adjoin_transcendental("x");
    FieldTower mixed = f2.adjoin_root("a", tower_poly(f2, {"1", "1", "1"}));
    mixed = mixed.adjoin_root("b", tower_poly(mixed, {"x", "0", "1"}));
    CHECK(mixed.classify(1).shape == Shape::SeparableThenInsep);

    FieldTower unsplit = f2.adjoin_root("b", tower_poly(f2, {"x", "0", "1"}));
    // Artin-Schreier over F2(sqrt x) is outside the oracle; the shape only
    // depends on the step kinds.
    IrreducibilityCert trusted;
    trusted.method = CertMethod::QuadraticRootSearch;
    trusted.witness = "supplied by the test";
    unsplit = unsplit.adjoin_certified("a", tower_poly(unsplit, {"b", "1", "1"}), trusted);
    CHECK(unsplit.classify(1).shape == Shape::Unsplit);
}

TEST_CASE("degree of F2(x, y) over its fourth powers") {
    FieldTower base = ambient_base(2, {"x", "y"}, {"x^4", "y^4"});
    FieldTower k = insep(insep(base, "x"), "y");
    CHECK(k.degree(2) == std::optional<std::uint64_t>(16));
    CHECK(k.algebra()->dim() == 16);
    SeparabilityProfile p = k.classify(2);
    CHECK(p.shape == Shape::InsepOnly);
    CHECK(p.insep_exponent == 4);
}

TEST_CASE("towers reconstruct their elements") {
    FieldTower base = ambient_base(3, {"x", "y"}, {"x^3", "y^9"});
    FieldTower k = insep(insep(base, "x + y^3"), "y");
    std::vector<std::string> samples = {"x", "y", "x*y + 1", "(x + y)/(x - y)", "y^5*x^2"};
    for (const auto& s : samples) {
        RatFunc h = amb(k, s);
        AlgElem e = tower_element(k, h);
        CHECK(ambient_image(k, e) == h);
        AlgElem inv = e.inverse();
        CHECK((e * inv).is_one());
        CHECK(ambient_image(k, inv) == h.inverse());
    }
    CHECK(k.degree(2) == std::optional<std::uint64_t>(27));
}

TEST_CASE("prefixes and generators") {
    FieldTower base = ambient_base(2, {"x", "y"}, {"x^2", "y^2"});
    FieldTower k = insep(base, "x");
    FieldTower l = insep(k, "y");
    CHECK(l.has_prefix(k));
    CHECK(l.has_prefix(base));
    CHECK_FALSE(k.has_prefix(l));
    CHECK(l.prefix(3).has_prefix(k));
    CHECK(l.step_index("y") == std::optional<std::size_t>(3));
    CHECK(l.is_transcendental_var("x^2"));
    CHECK_FALSE(l.is_transcendental_var("x"));
    CHECK(code_of([&] { l.generator("z"); }) == ErrorCode::UnknownName);
}
