#include <doctest.h>

#include <algorithm>
#include <random>

#include "engine.hpp"
#include "error.hpp"
#include "expr.hpp"
#include "family.hpp"
#include "tensor.hpp"
#include "tower_helpers.hpp"

using namespace regtensor;
using namespace regtensor::testing;

namespace {

const std::vector<FamilyInstance>& family() {
    static const std::vector<FamilyInstance> f = binomial_family();
    return f;
}

// Squarefree radicands as exponent vectors over {-1, 2, 3, 5, 7}.
const std::vector<std::pair<int, unsigned>> kRadicands = {
    {-1, 0b00001}, {2, 0b00010}, {3, 0b00100}, {5, 0b01000}, {7, 0b10000}, {-2, 0b00011},
    {-3, 0b00101}, {6, 0b00110}, {10, 0b01010}, {-5, 0b01001}, {15, 0b01100}, {-7, 0b10001},
    {14, 0b10010}, {21, 0b10100}, {-6, 0b00111}, {30, 0b01110},
};

// F2 rank of a set of exponent vectors.
unsigned rank2(std::vector<unsigned> v) {
    unsigned r = 0;
    for (unsigned bit = 0; bit < 5; ++bit) {
        auto it = std::find_if(v.begin(), v.end(), [&](unsigned x) { return x >> bit & 1; });
        if (it == v.end()) continue;
        unsigned pivot = *it;
        v.erase(it);
        for (auto& x : v) {
            if (x >> bit & 1) x ^= pivot;
        }
        ++r;
    }
    return r;
}

FieldTower multiquadratic(const std::vector<int>& rads) {
    FieldTower t = FieldTower::prime(PrimeField::rationals());
    for (std::size_t i = 0; i < rads.size(); ++i) {
        t = t.adjoin_root("r" + std::to_string(i), tower_poly(t, {std::to_string(-rads[i]), "0", "1"}));
    }
    return t;
}

}  // namespace

TEST_CASE("the binomial family is large enough" * doctest::test_suite("properties")) {
    CHECK(family().size() >= 100);
}

TEST_CASE("verdict symmetry on purely inseparable pairs" * doctest::test_suite("properties")) {
    int cases = 0;
    for (const auto& f : family()) {
        if (f.l_transcendental) continue;
        CAPTURE(f.label);
        Verdict kl = check_theorem2(f.K, f.L);
        Verdict lk = check_theorem2(f.L, f.K);
        REQUIRE(kl.regular != Answer::HypothesisNotVerified);
        CHECK(kl.regular == lk.regular);
        CHECK(theorem2_by_intersections(f.K, f.L) == theorem2_by_intersections(f.L, f.K));
        ++cases;
    }
    CHECK(cases >= 100);
}

TEST_CASE("degrees multiply along towers and match subfield dimensions" * doctest::test_suite("properties")) {
    int cases = 0;
    for (const auto& f : family()) {
        CAPTURE(f.label);
        for (const NamedField* nf : {&f.K, &f.L}) {
            const FieldTower& t = nf->tower;
            const std::size_t top = t.steps().size();
            const std::size_t start = nf->base_len + t.td(nf->base_len);
            const auto whole = t.degree(start);
            REQUIRE(whole);
            for (std::size_t mid = start; mid <= top; ++mid) {
                auto upper = t.degree(mid);
                auto lower = t.prefix(mid).degree(start);
                REQUIRE(upper);
                REQUIRE(lower);
                CHECK(*whole == *upper * *lower);
            }
        }
        ContextPtr ctx = context_for({&f.K.tower, &f.L.tower});
        SubfieldBasis k = field_basis(ctx, f.K.tower, f.K.base_len);
        SubfieldBasis K = field_basis(ctx, f.K.tower, f.K.tower.steps().size());
        CHECK(relative_degree(k, K) == *f.K.tower.degree(f.K.base_len));
        CHECK(ctx->size() % K.dim() == 0);
        CHECK(build_tensor(f.K.tower, f.L.tower, f.K.base_len).dim() == *f.K.tower.degree(f.K.base_len));
        ++cases;
    }
    CHECK(cases >= 100);
}

TEST_CASE("idempotents of multiquadratic tensor products" * doctest::test_suite("properties")) {
    std::mt19937_64 rng(17);
    std::uniform_int_distribution<std::size_t> pick(0, kRadicands.size() - 1);
    std::uniform_int_distribution<int> size(1, 2);
    int cases = 0;
    while (cases < 120) {
        auto draw = [&](int n) {
            std::vector<int> rads;
            std::vector<unsigned> vecs;
            while (static_cast<int>(rads.size()) < n) {
                auto [r, v] = kRadicands[pick(rng)];
                std::vector<unsigned> with = vecs;
                with.push_back(v);
                if (rank2(with) == with.size()) {
                    rads.push_back(r);
                    vecs = with;
                }
            }
            return std::pair{rads, vecs};
        };
        auto [kr, kv] = draw(size(rng));
        auto [lr, lv] = draw(size(rng));
        CAPTURE(kr);
        CAPTURE(lr);
        std::vector<unsigned> sum = kv;
        sum.insert(sum.end(), lv.begin(), lv.end());
        const unsigned compositum = 1u << rank2(sum);
        const unsigned copies = (1u << kv.size()) * (1u << lv.size()) / compositum;

        TensorAlgebra a = build_tensor(multiquadratic(kr), multiquadratic(lr), 0);
        Decomposition d = decompose_local(a);
        REQUIRE(d.factors.size() == copies);
        AlgElem total = a.alg->zero();
        for (std::size_t i = 0; i < d.factors.size(); ++i) {
            const AlgElem& e = d.factors[i].idempotent;
            CHECK(e * e == e);
            for (std::size_t j = i + 1; j < d.factors.size(); ++j) CHECK((e * d.factors[j].idempotent).is_zero());
            CHECK(d.factors[i].is_field());
            CHECK(d.factors[i].residue_degree_over_k == std::optional<std::uint64_t>(compositum));
            total += e;
        }
        CHECK(total.is_one());
        StructureCheck c = verify_structure(a, d);
        CHECK(c.idempotents_ok);
        CHECK(c.dimensions_ok);
        ++cases;
    }
}

TEST_CASE("structure checks on the binomial family" * doctest::test_suite("properties")) {
    int cases = 0;
    for (const auto& f : family()) {
        CAPTURE(f.label);
        TensorAlgebra a = build_tensor(f.K.tower, f.L.tower, f.K.base_len);
        Decomposition d = decompose_local(a);
        AlgElem total = a.alg->zero();
        for (const auto& lf : d.factors) {
            CHECK(lf.idempotent * lf.idempotent == lf.idempotent);
            total += lf.idempotent;
        }
        CHECK(total.is_one());
        StructureCheck c = verify_structure(a, d);
        CHECK(c.idempotents_ok);
        CHECK(c.nilradical_ok);
        CHECK(c.dimensions_ok);
        ++cases;
    }
    CHECK(cases >= 100);
}

TEST_CASE("not-regular verdicts carry a witness that replays" * doctest::test_suite("properties")) {
    int nos = 0;
    for (const auto& f : family()) {
        CAPTURE(f.label);
        Verdict v = check_theorem2(f.K, f.L);
        if (v.regular != Answer::No) continue;
        ContextPtr ctx = context_for({&f.K.tower, &f.L.tower});
        SubfieldBasis k = field_basis(ctx, f.K.tower, f.K.base_len);
        SubfieldBasis L = field_basis(ctx, f.L.tower, f.L.tower.steps().size());
        bool replayed = false;
        for (const auto& w : v.witnesses) {
            if (const auto* d = std::get_if<DegreeWitness>(&w)) {
                std::vector<RatFunc> gens;
                for (const auto& g : d->subset) gens.push_back(parse_ratfunc(g, ctx->ring()));
                const std::uint64_t deg_k = relative_degree(k, extend(k, gens));
                const std::uint64_t deg_l = relative_degree(L, extend(L, gens));
                CHECK(deg_k == d->deg_k);
                CHECK(deg_l == d->deg_l);
                replayed = deg_k != deg_l;
            }
        }
        CHECK(replayed);
        ++nos;
    }
    CHECK(nos >= 20);
}
