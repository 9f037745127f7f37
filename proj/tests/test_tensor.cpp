#include <doctest.h>

#include "error.hpp"
#include "tensor.hpp"
#include "tower_helpers.hpp"

using namespace regtensor;
using namespace regtensor::testing;

namespace {

FieldTower quad(const FieldTower& t, const std::string& name, const std::string& c) {
    return t.adjoin_root(name, tower_poly(t, {c, "0", "1"}));
}

void check_verified(const TensorAlgebra& a, const Decomposition& d) {
    StructureCheck c = verify_structure(a, d);
    CHECK(c.idempotents_ok);
    CHECK(c.nilradical_ok);
    CHECK(c.dimensions_ok);
}

}  // namespace

TEST_CASE("tensor square of F2(t) over F2(t^2)") {
    FieldTower base = ambient_base(2, {"t"}, {"t^2"});
    FieldTower k = insep(base, "t");
    TensorAlgebra a = build_tensor(k, k, 1);
    CHECK(a.ambient);
    CHECK(a.dim() == 2);
    Decomposition d = decompose_local(a);
    REQUIRE(d.factors.size() == 1);
    const LocalFactor& f = d.factors[0];
    CHECK(f.residue == "L");
    CHECK(f.residue_degree == 1);
    CHECK(f.nilpotency_index == 2);
    CHECK(f.edim == 1);
    CHECK_FALSE(f.is_field());
    REQUIRE(d.nilradical.size() == 1);
    CHECK(a.render(d.nilradical[0]) == "X + t");
    CHECK_FALSE(d.is_reduced());
    CHECK_FALSE(d.is_domain());
    CHECK_FALSE(regular_direct(a));
    check_verified(a, d);
}

TEST_CASE("the same algebra through the tower path") {
    FieldTower u = FieldTower::prime(PrimeField::fp(2)).adjoin_transcendental("u");
    FieldTower k = u.adjoin_root("t", tower_poly(u, {"u", "0", "1"}));
    TensorAlgebra a = build_tensor(k, k, 1);
    CHECK_FALSE(a.ambient);
    Decomposition d = decompose_local(a);
    REQUIRE(d.factors.size() == 1);
    CHECK(d.factors[0].edim == 1);
    CHECK(d.factors[0].nilpotency_index == 2);
    REQUIRE(d.nilradical.size() == 1);
    CHECK(a.render(d.nilradical[0]) == "X + t");
    check_verified(a, d);
}

TEST_CASE("F2(y^2, x) and F2(y, x^2) over F2(x^2, y^2)") {
    FieldTower base = ambient_base(2, {"x", "y"}, {"x^2", "y^2"});
    FieldTower k = insep(base, "x");
    FieldTower l = insep(base, "y");
    TensorAlgebra a = build_tensor(k, l, 2);
    CHECK(a.dim() == 2);
    Decomposition d = decompose_local(a);
    REQUIRE(d.factors.size() == 1);
    CHECK(d.factors[0].residue_degree == 2);
    CHECK(d.factors[0].residue_degree_over_k == std::optional<std::uint64_t>(4));
    CHECK(d.is_field());
    CHECK(d.is_reduced());
    CHECK(regular_direct(a));
    CHECK(regular_direct(build_tensor(l, k, 2)));
    check_verified(a, d);
}

TEST_CASE("multiquadratic tensor products split into copies of the compositum") {
    FieldTower q = FieldTower::prime(PrimeField::rationals());
    FieldTower k = quad(quad(q, "i", "1"), "s", "3");
    FieldTower l = quad(quad(q, "i", "1"), "r", "-2");
    TensorAlgebra a = build_tensor(k, l, 0);
    CHECK_FALSE(a.ambient);
    CHECK(a.dim() == 4);
    Decomposition d = decompose_local(a);
    REQUIRE(d.factors.size() == 2);
    for (const auto& f : d.factors) {
        CHECK(f.is_field());
        CHECK(f.residue_degree == 2);
        CHECK(f.residue_degree_over_k == std::optional<std::uint64_t>(8));
        CHECK(f.length_dim == 2);
    }
    CHECK(d.is_reduced());
    CHECK_FALSE(d.is_domain());
    CHECK(regular_direct(a));
    check_verified(a, d);

    TensorAlgebra b = build_tensor(l, k, 0);
    Decomposition db = decompose_local(b);
    CHECK(db.factors.size() == 2);
    CHECK(db.regular());
}

TEST_CASE("linearly disjoint quadratic fields give a field") {
    FieldTower q = FieldTower::prime(PrimeField::rationals());
    TensorAlgebra a = build_tensor(quad(q, "a", "-2"), quad(q, "b", "-3"), 0);
    Decomposition d = decompose_local(a);
    REQUIRE(d.factors.size() == 1);
    CHECK(d.factors[0].residue_degree_over_k == std::optional<std::uint64_t>(4));
    CHECK(d.is_field());

    TensorAlgebra same = build_tensor(quad(q, "a", "-2"), quad(q, "b", "-2"), 0);
    Decomposition ds = decompose_local(same);
    CHECK(ds.factors.size() == 2);
    check_verified(same, ds);
}

TEST_CASE("tensoring with the base gives L") {
    FieldTower q = FieldTower::prime(PrimeField::rationals());
    FieldTower l = quad(q, "r", "-2");
    TensorAlgebra a = build_tensor(q, l, 0);
    CHECK(a.dim() == 1);
    Decomposition d = decompose_local(a);
    CHECK(d.is_field());
    CHECK(d.nilradical.empty());

    FieldTower base = ambient_base(2, {"t"}, {"t^2"});
    TensorAlgebra b = build_tensor(base, insep(base, "t"), 1);
    CHECK(b.dim() == 1);
    CHECK(regular_direct(b));
}

TEST_CASE("intersection-free but not disjoint: two inseparable generators") {
    FieldTower base = ambient_base(2, {"x", "y", "z"}, {"x^4", "y^4"});
    FieldTower k = insep(insep(base, "x^2"), "y^2");
    FieldTower lz = base.adjoin_transcendental("z", amb(base, "z"));
    FieldTower l = insep(lz, "x^2*(y^2 + z)");
    TensorAlgebra a = build_tensor(k, l, 2);
    CHECK(a.ambient);
    CHECK(a.dim() == 4);
    Decomposition d = decompose_local(a);
    REQUIRE(d.factors.size() == 1);
    CHECK(d.factors[0].residue_degree == 2);
    CHECK(d.factors[0].edim == 1);
    CHECK(d.factors[0].nilpotency_index == 2);
    CHECK(d.nilradical.size() == 2);
    CHECK_FALSE(regular_direct(a));
    check_verified(a, d);
    // L is not algebraic over k, so only this side is constructible.
    CHECK_THROWS_AS(build_tensor(l, k, 2), Error);
}

TEST_CASE("tensor construction errors") {
    FieldTower base = ambient_base(2, {"t"}, {"t^2"});
    FieldTower other = ambient_base(2, {"t"}, {"t^4"});
    try {
        build_tensor(insep(base, "t"), insep(other, "t"), 1);
        FAIL("expected BaseMismatch");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::BaseMismatch);
    }
    FieldTower trans = FieldTower::prime(PrimeField::fp(2)).adjoin_transcendental("u");
    try {
        build_tensor(trans, trans, 0);
        FAIL("expected NotAlgebraic");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NotAlgebraic);
    }
}
