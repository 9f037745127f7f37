#include <doctest.h>

#include "engine.hpp"
#include "error.hpp"
#include "tower_helpers.hpp"

using namespace regtensor;
using namespace regtensor::testing;

namespace {

NamedField named(std::string name, FieldTower t, std::size_t base_len) { return {std::move(name), std::move(t), base_len}; }

FieldTower quad(const FieldTower& t, const std::string& name, const std::string& c) {
    return t.adjoin_root(name, tower_poly(t, {c, "0", "1"}));
}

template <class W>
const W* find_witness(const Verdict& v) {
    for (const auto& w : v.witnesses) {
        if (const W* p = std::get_if<W>(&w)) return p;
    }
    return nullptr;
}

bool has_rule(const Verdict& v, const std::string& name) {
    for (const auto& r : v.rules) {
        if (r.name == name) return true;
    }
    return false;
}

struct MeetIsBase {
    FieldTower base = ambient_base(2, {"x", "y", "z"}, {"x^4", "y^4"});
    NamedField k{"k", base, 2};
    NamedField K{"K", insep(insep(base, "x^2"), "y^2"), 2};
    NamedField L{"L", insep(base.adjoin_transcendental("z", amb(base, "z")), "x^2*(y^2 + z)"), 2};
};

}  // namespace

TEST_CASE("tensor square of F2(t) over F2(t^2) is not regular") {
    FieldTower base = ambient_base(2, {"t"}, {"t^2"});
    NamedField K = named("K", insep(base, "t"), 1);
    Verdict v = check_theorem2(K, K);
    CHECK(v.regular == Answer::No);
    const auto* w = find_witness<DegreeWitness>(v);
    REQUIRE(w);
    CHECK(w->subset == std::vector<std::string>{"t"});
    CHECK(w->deg_k == 2);
    CHECK(w->deg_l == 1);
    CHECK(v.noetherian);
    CHECK(v.krull_dim == std::optional<std::size_t>(0));

    Verdict d = decide_regular(K, K);
    CHECK(d.regular == Answer::No);
    const auto* nil = find_witness<NilpotentWitness>(d);
    REQUIRE(nil);
    CHECK(nil->element == "X + t");
    CHECK(nil->edim == 1);
    CHECK(nil->krull_dim == 0);

    Verdict s = check_self_tensor(K);
    CHECK(s.regular == Answer::No);
    CHECK(find_witness<SeparabilityWitness>(s));
}

TEST_CASE("truncated inseparable pair with matching degrees is regular") {
    FieldTower base = ambient_base(2, {"x1", "x2", "y"}, {"y^2", "x1^2", "x2^4"});
    NamedField K = named("K", insep(insep(base, "x1"), "x2"), 3);
    NamedField L = named("L", insep(base, "y"), 3);
    Verdict v = check_theorem2(K, L);
    CHECK(v.regular == Answer::Yes);
    CHECK(has_rule(v, "derived-lemma-full-set"));
    const auto* w = find_witness<DegreeWitness>(v);
    REQUIRE(w);
    CHECK(w->deg_k == 8);
    CHECK(w->deg_l == 8);
    CHECK(theorem2_by_intersections(K, L) == Answer::Yes);

    CrossCheck c = cross_validate(K, L);
    CHECK(c.constructible);
    CHECK(c.direct);
    CHECK(c.agree);
    CHECK(check_theorem2(L, K).regular == Answer::Yes);
}

TEST_CASE("intersection with the base is not enough") {
    MeetIsBase r;
    Verdict v = check_theorem2(r.K, r.L);
    CHECK(v.regular == Answer::No);
    const auto* dw = find_witness<DegreeWitness>(v);
    REQUIRE(dw);
    CHECK(dw->subset == std::vector<std::string>{"x^2", "y^2"});
    CHECK(dw->deg_k == 4);
    CHECK(dw->deg_l == 2);
    const auto* iw = find_witness<IntersectionWitness>(v);
    REQUIRE(iw);
    CHECK(iw->subset == std::vector<std::string>{"x^2"});
    CHECK(iw->meet_basis.size() == 4);
    CHECK(iw->k_basis.size() == 2);
    CHECK_FALSE(iw->equal);

    IntersectionWitness empty = check_condition_v(r.K, r.L, {});
    CHECK(empty.equal);
    CHECK(empty.meet_basis.size() == 1);
    CHECK(theorem2_by_intersections(r.K, r.L) == Answer::No);
    CHECK(decide_regular(r.K, r.L).regular == Answer::No);
    CHECK(decide_regular(r.L, r.K).regular == Answer::No);
}

TEST_CASE("a purely inseparable field against a subextension") {
    FieldTower base = ambient_base(2, {"u"}, {"u^4"});
    NamedField K = named("Ku", insep(base, "u"), 1);
    NamedField L = named("Ku2", insep(base, "u^2"), 1);
    IntersectionWitness w = check_condition_v(K, L, {});
    CHECK_FALSE(w.equal);
    CHECK(w.meet_basis.size() == 2);
    CHECK(w.k_basis.size() == 1);
    Verdict v = decide_regular(K, L);
    CHECK(v.regular == Answer::No);
    CHECK(decide_regular(L, K).regular == Answer::No);
}

TEST_CASE("separable fields: the base change rule and the copy count") {
    FieldTower q = FieldTower::prime(PrimeField::rationals());
    NamedField K = named("K", quad(quad(q, "i", "1"), "w", "3"), 0);
    NamedField L = named("L", quad(quad(q, "i", "1"), "r", "-2"), 0);
    Verdict v = check_separable_algebraic(K, L);
    CHECK(v.regular == Answer::Yes);
    CHECK(has_rule(v, "galois-copies"));
    const auto* w = find_witness<IdempotentWitness>(v);
    REQUIRE(w);
    CHECK(w->idempotents.size() == 2);
    CHECK(w->residue_degrees == std::vector<std::uint64_t>{8, 8});

    NamedField a = named("A", quad(q, "a", "-2"), 0);
    NamedField b = named("B", quad(q, "b", "-3"), 0);
    Verdict ab = check_separable_algebraic(a, b);
    CHECK(find_witness<IdempotentWitness>(ab)->idempotents.size() == 1);

    NamedField base = named("k", q, 0);
    CHECK(decide_regular(base, L).regular == Answer::Yes);
    CHECK(check_self_tensor(named("K", quad(q, "s", "-2"), 0)).regular == Answer::Yes);
}

TEST_CASE("transcendental extensions and the dimension formula") {
    FieldTower q = FieldTower::prime(PrimeField::rationals());
    FieldTower k2 = q.adjoin_transcendental("x1").adjoin_transcendental("x2");
    NamedField K = named("K", k2, 0);
    NamedField L = named("L", k2.adjoin_transcendental("x3"), 0);
    Verdict v = check_lemma1(K, L);
    CHECK(v.regular == Answer::Yes);
    CHECK(v.krull_dim == std::optional<std::size_t>(2));
    CHECK(dim_tensor(K, L) == 2);
    CHECK(dim_tensor(named("k", q, 0), L) == 0);
    CHECK(dim_tensor(K, K) == 2);
    CHECK(decide_regular(K, L).regular == Answer::Yes);

    MeetIsBase r;
    try {
        check_lemma1(r.K, r.L);
        FAIL("expected SeparabilityNotCertified");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::SeparabilityNotCertified);
    }
}

TEST_CASE("an inseparable generator that is transcendental over the base") {
    // b^2 = t with t transcendental over k: K = k(b) is separable, so the
    // tower shape alone must not produce a verdict.
    FieldTower base = ambient_base(2, {"x", "t"}, {"x^2"});
    FieldTower kt = base.adjoin_transcendental("t^2", amb(base, "t^2"));
    NamedField K = named("K", insep(kt, "t"), 1);
    Verdict v = check_self_tensor(K);
    CHECK(v.regular == Answer::HypothesisNotVerified);
    CHECK(check_theorem2(K, K).regular == Answer::HypothesisNotVerified);
}

TEST_CASE("fiber chain over descriptors") {
    FieldTower base = ambient_base(2, {"u", "x"}, {"u^4"});
    NamedField ku = named("Ku", insep(base, "u"), 1);
    NamedField ku2 = named("Ku2", insep(base, "u^2"), 1);
    NamedField kx = named("Kx", base.adjoin_transcendental("x", amb(base, "x")), 1);

    AlgebraDescriptor a;
    a.name = "A";
    a.regular = true;
    a.residue_fields = {ku2, kx};
    AlgebraDescriptor b;
    b.name = "B";
    b.regular = true;
    b.finitely_generated = true;
    b.residue_fields = {ku};

    Verdict plain = check_theorem3(a, b);
    CHECK(plain.regular == Answer::HypothesisNotVerified);
    CHECK(plain.established == std::vector<std::string>{"v"});

    Verdict v = check_theorem3(a, b, {"ii"});
    CHECK(v.regular == Answer::Yes);
    CHECK(v.established == std::vector<std::string>{"ii", "iv", "v"});
    bool saw_failed_fiber = false;
    for (const auto& w : v.witnesses) {
        if (const auto* f = std::get_if<FiberWitness>(&w)) {
            if (f->first == "Ku2" && f->second == "Ku") saw_failed_fiber = f->answer == Answer::No;
        }
    }
    CHECK(saw_failed_fiber);
    bool noted = false;
    for (const auto& n : v.notes) noted = noted || n.find("does not reverse") != std::string::npos;
    CHECK(noted);

    AlgebraDescriptor sep;
    sep.name = "A";
    sep.regular = true;
    sep.residually_separable = true;
    Verdict eq = check_theorem3(sep, b);
    CHECK(eq.regular == Answer::Yes);
    CHECK(has_rule(eq, "residually-separable-equivalence"));
    CHECK(eq.established.size() == 5);

    AlgebraDescriptor r1;
    r1.name = "A";
    r1.regular = true;
    r1.tensor_noetherian = true;
    AlgebraDescriptor r2 = r1;
    r2.name = "B";
    CHECK(check_theorem3(r1, r2).regular == Answer::HypothesisNotVerified);

    AlgebraDescriptor bare;
    bare.name = "C";
    try {
        check_theorem3(bare, bare);
        FAIL("expected InsufficientDescriptors");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::InsufficientDescriptors);
    }
}

TEST_CASE("local algebras with inseparable residue fields") {
    FieldTower base = ambient_base(2, {"x1", "x2", "y"}, {"y^2", "x1^2", "x2^4"});
    NamedField K = named("K", insep(insep(base, "x1"), "x2"), 3);
    NamedField L = named("L", insep(base, "y"), 3);
    AlgebraDescriptor a;
    a.name = "A";
    a.regular = true;
    a.tensor_noetherian = true;
    a.residue_fields = {K};
    AlgebraDescriptor b;
    b.name = "B";
    b.regular = true;
    b.residue_fields = {L};
    Verdict v = check_theorem3(a, b);
    CHECK(v.regular == Answer::Yes);
    CHECK(v.established.size() == 5);
    CHECK_FALSE(has_rule(v, "residually-separable-equivalence"));
}
