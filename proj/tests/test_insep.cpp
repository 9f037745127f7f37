#include <doctest.h>

#include <random>

#include "error.hpp"
#include "tower_helpers.hpp"

using namespace regtensor;
using namespace regtensor::testing;

namespace {

RatFunc in(const ContextPtr& ctx, const std::string& s) { return parse_ratfunc(s, ctx->ring()); }

std::vector<RatFunc> gens(const ContextPtr& ctx, const std::vector<std::string>& s) {
    std::vector<RatFunc> out;
    for (const auto& g : s) out.push_back(in(ctx, g));
    return out;
}

// Random monomial sums with small exponents and coefficients.
std::string random_element(std::mt19937_64& rng, const std::vector<std::string>& vars, std::uint64_t p) {
    std::uniform_int_distribution<int> terms(1, 3), ex(0, 3);
    std::uniform_int_distribution<std::uint64_t> co(1, p - 1);
    std::string out;
    int n = terms(rng);
    for (int i = 0; i < n; ++i) {
        if (!out.empty()) out += " + ";
        out += std::to_string(co(rng));
        for (const auto& v : vars) out += "*" + v + "^" + std::to_string(ex(rng));
    }
    return out;
}

}  // namespace

TEST_CASE("decomposition over the Frobenius base") {
    ContextPtr ctx = make_context(PrimeField::fp(2), {"x", "y"}, 1);
    CHECK(ctx->size() == 4);
    auto c = ctx->decompose(in(ctx, "x^2*y"));
    REQUIRE(c.size() == 4);
    CHECK(c[2].to_string() == "x");
    CHECK(c[0].is_zero());

    ContextPtr one = make_context(PrimeField::fp(2), {"x"}, 2);
    auto c5 = one->decompose(in(one, "x^5"));
    CHECK(c5[1].to_string() == "x");
    auto cinv = one->decompose(in(one, "1/x"));
    CHECK(cinv[3].to_string() == "1/x");
    for (const auto& s : {"x^5 + x^2 + 1", "1/(x + 1)", "x^3/(x^4 + x)"}) {
        RatFunc h = in(one, s);
        CHECK(one->compose(one->decompose(h)) == h);
    }
    CHECK_THROWS_AS(make_context(PrimeField::rationals(), {"x"}, 1), Error);
}

TEST_CASE("subfield closures") {
    ContextPtr ctx = make_context(PrimeField::fp(2), {"x", "y", "z"}, 1);
    CHECK(subalgebra_closure(ctx, {}).dim() == 1);
    CHECK(subalgebra_closure(ctx, gens(ctx, {"x"})).dim() == 2);
    CHECK(subalgebra_closure(ctx, gens(ctx, {"x", "y", "z"})).dim() == 8);
    CHECK(subalgebra_closure(ctx, gens(ctx, {"x + y"})).dim() == 2);
    CHECK(subalgebra_closure(ctx, gens(ctx, {"x*z + y"})).dim() == 2);
    CHECK(subalgebra_closure(ctx, gens(ctx, {"x", "x*z + y"})).dim() == 4);
    CHECK(full_field(ctx).dim() == 8);
}

TEST_CASE("membership and intersections") {
    ContextPtr ctx = make_context(PrimeField::fp(2), {"x", "y", "z"}, 2);
    SubfieldBasis k = subalgebra_closure(ctx, gens(ctx, {"x^2", "y^2"}));
    SubfieldBasis l = subalgebra_closure(ctx, gens(ctx, {"x^2*z^2 + y^2"}));
    CHECK(member(in(ctx, "y^2"), extend(l, gens(ctx, {"x^2", "z^2"}))));
    CHECK_FALSE(member(in(ctx, "y^2"), extend(l, gens(ctx, {"x^2"}))));
    CHECK_FALSE(member(in(ctx, "y^2"), subalgebra_closure(ctx, gens(ctx, {"x^2"}))));
    CHECK(intersect(k, l).dim() == 1);
    CHECK(relative_degree(subalgebra_closure(ctx, {}), k) == 4);

    ContextPtr one = make_context(PrimeField::fp(2), {"t"}, 2);
    SubfieldBasis t1 = subalgebra_closure(one, gens(one, {"t"}));
    SubfieldBasis t2 = subalgebra_closure(one, gens(one, {"t^2"}));
    CHECK(intersect(t1, t2).dim() == 2);
    CHECK(relative_degree(t2, t1) == 2);
    CHECK(contains(t1, t2));
    CHECK_FALSE(contains(t2, t1));
    CHECK_THROWS_AS(relative_degree(t1, t2), Error);

    ContextPtr other = make_context(PrimeField::fp(2), {"t"}, 1);
    CHECK_THROWS_AS(contains(t1, subalgebra_closure(other, {})), Error);
}

TEST_CASE("subfield lattice properties on random generators" * doctest::test_suite("properties")) {
    std::mt19937_64 rng(2024);
    int instances = 0;
    for (std::uint64_t p : {2, 3}) {
        std::vector<std::string> vars = p == 2 ? std::vector<std::string>{"x", "y", "z"}
                                               : std::vector<std::string>{"x", "y"};
        ContextPtr ctx = make_context(PrimeField::fp(p), vars, 1);
        for (int round = 0; round < 50; ++round) {
            RatFunc g1 = in(ctx, random_element(rng, vars, p));
            RatFunc g2 = in(ctx, random_element(rng, vars, p));
            RatFunc g3 = in(ctx, random_element(rng, vars, p));
            SubfieldBasis a = subalgebra_closure(ctx, {g1});
            SubfieldBasis b = subalgebra_closure(ctx, {g2, g3});
            SubfieldBasis ab = extend(a, {g2, g3});
            CHECK(subalgebra_closure(ctx, a.elements()) == a);
            CHECK(ctx->size() % a.dim() == 0);
            CHECK(ab.dim() % b.dim() == 0);
            CHECK(member(g1 * g2 + g3, ab));
            CHECK(member(g1 * g1, a));
            if (!g1.is_zero()) CHECK(member(g1.inverse(), a));
            CHECK(intersect(a, b) == intersect(b, a));
            CHECK(intersect(a, full_field(ctx)) == a);
            CHECK(contains(a, intersect(a, b)));
            CHECK(contains(ab, a));
            CHECK(relative_degree(a, ab) * a.dim() == ab.dim());
            ++instances;
        }
    }
    CHECK(instances == 100);
}

TEST_CASE("ambient shapes and tower elements") {
    FieldTower base = ambient_base(2, {"x", "y", "z"}, {"x^4", "y^2"});
    AmbientShape s = ambient_shape(base);
    CHECK(s.vars == std::vector<std::string>{"x", "y"});
    CHECK(s.var_exponent == std::vector<unsigned>{2, 1});
    CHECK(s.exponent == 2);

    FieldTower k = insep(base, "x^2 + y");
    AlgElem e = tower_element(k, amb(k, "x^4 + x^2 + y"));
    CHECK(render_element(k, e) == "x^4 + x^2 + y");
    CHECK_THROWS_AS(tower_element(k, amb(k, "x")), Error);

    InsepData d = insep_data(k, amb(k, "x"));
    CHECK(d.m == 2);
    CHECK(render_element(k, d.a) == "x^4");
    InsepData dy = insep_data(k, amb(k, "y"));
    CHECK(dy.m == 1);
    CHECK(render_element(k, dy.a) == "y^2");
    try {
        insep_data(k, amb(k, "z"));
        FAIL("expected NotAlgebraic");
    } catch (const Error& err) {
        CHECK(err.code() == ErrorCode::NotAlgebraic);
    }
    CHECK_THROWS_AS(insep_data(k, amb(k, "x^2 + y")), Error);

    FieldTower bad = FieldTower::prime(PrimeField::fp(2)).with_ambient({"x"});
    bad = bad.adjoin_transcendental("x^2 + x", amb(bad, "x^2 + x"));
    CHECK_THROWS_AS(ambient_shape(bad), Error);
}

TEST_CASE("field bases of towers") {
    FieldTower base = ambient_base(2, {"x", "y", "z"}, {"x^4", "y^4", "z^4"});
    FieldTower l = insep(base, "x^2*z^2 + y^2");
    FieldTower k = insep(insep(base, "x^2"), "y^2");
    ContextPtr ctx = context_for({&k, &l});
    CHECK(ctx->exponent() == 2);
    CHECK(field_basis(ctx, k, k.steps().size()).dim() == 4);
    CHECK(field_basis(ctx, l, l.steps().size()).dim() == 2);
    CHECK(field_basis(ctx, k, 3).dim() == 1);
    SubfieldBasis meet = intersect(field_basis(ctx, k, k.steps().size()), field_basis(ctx, l, l.steps().size()));
    CHECK(meet.dim() == 1);
}
