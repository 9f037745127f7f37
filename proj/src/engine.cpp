#include "engine.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "error.hpp"
#include "factor.hpp"
#include "insep.hpp"

namespace regtensor {

namespace {

const Rule kFiniteGeneration{"finite-generation-noetherian",
                             "a finitely generated field extension tensored with a Noetherian ring is Noetherian"};
const Rule kSeparableGeometric{"separable-is-geometrically-regular",
                               "a separable field extension is geometrically regular"};
const Rule kSeparableBaseChange{"geometrically-regular-base-change",
                                "A geometrically regular: A (x) B is regular iff B is regular and A (x) B is Noetherian"};
const Rule kFieldRegular{"field-is-regular", "a field is a regular ring"};
const Rule kSplitShape{"split-shape", "the tower presents K as K_s K_i with K_i = k(S), S purely inseparable over k"};
const Rule kStripSeparable{"strip-separable-part", "K (x) L is regular iff K_i (x) L is regular"};
const Rule kDegreeCriterion{"degree-criterion",
                            "K_i (x) L is regular iff [k(S'):k] = [L(S'):L] for every finite S' in S"};
const Rule kFullSet{"derived-lemma-full-set",
                    "equal degrees at S' = S make k(S) and L linearly disjoint, hence equal degrees at every S' "
                    "(derived, not part of the criterion)"};
const Rule kIntersectionCriterion{"intersection-criterion",
                                  "K_i (x) L is regular iff K_i meet L(S') = k(S') for every finite S' in S"};
const Rule kZeroDim{"zero-dimensional-equivalence",
                    "K separable algebraic: K (x) L regular iff reduced iff a finite product of fields"};
const Rule kGaloisCount{"galois-copies", "L Galois: K (x) L is a product of n = [K meet L : k] copies of KL"};
const Rule kSelfTensor{"self-tensor-criterion", "K (x) K is regular iff K is finitely generated and separable"};
const Rule kDimension{"dimension-formula", "dim(K (x) L) = min(td(K:k), td(L:k))"};
const Rule kFiberChain{"fiber-chain", "(i) implies (ii) and (iii); each of these implies (iv); (iv) implies (v)"};
const Rule kResidualEquivalence{"residually-separable-equivalence",
                                "A or B residually separable: A (x) B regular iff A and B regular"};
const Rule kDirect{"direct-structure", "explicit tensor algebra: regular iff every local factor has edim 0"};

bool has_rule(const Verdict& v, const std::string& name) {
    return std::any_of(v.rules.begin(), v.rules.end(), [&](const Rule& r) { return r.name == name; });
}

void add_rule(Verdict& v, const Rule& r) {
    if (!has_rule(v, r.name)) v.rules.push_back(r);
}

FieldTower base_of(const NamedField& f) { return f.tower.prefix(f.base_len); }

void check_pair(const NamedField& K, const NamedField& L) {
    if (K.tower.characteristic() != L.tower.characteristic()) {
        fail(ErrorCode::CharMismatch, K.name + " and " + L.name + " have different characteristic");
    }
    if (K.base_len != L.base_len || K.base_len > K.tower.steps().size() || !L.tower.has_prefix(base_of(K))) {
        fail(ErrorCode::BaseMismatch, K.name + " and " + L.name + " are not over the same base");
    }
}

void set_field_noetherian(Verdict& v, const NamedField& K, const NamedField& L) {
    v.noetherian = true;
    v.noetherian_rule = kFiniteGeneration.name;
    add_rule(v, kFiniteGeneration);
    add_rule(v, kDimension);
    v.krull_dim = std::min(td_over_base(K), td_over_base(L));
}

// True when e (an element of K's algebra) lies in the base k: its
// coordinates stay in k's algebraic part and its coefficients only involve
// k's transcendentals.
bool lies_in_base(const FieldTower& K, std::size_t base_len, const AlgElem& e) {
    const std::size_t kdim = K.prefix_algebra(base_len)->dim();
    const std::size_t tk = K.td() - K.td(base_len);
    const auto& c = e.coords();
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (c[i].is_zero()) continue;
        if (i >= kdim) return false;
        for (const MultiPoly* m : {&c[i].num(), &c[i].den()}) {
            for (std::size_t var : m->variables_used()) {
                if (var >= tk) return false;
            }
        }
    }
    return true;
}

// Whether an inseparable generator of K has a p-power in k.
bool purely_inseparable_over_base(const FieldTower& K, std::size_t base_len, const InsepGenerator& g) {
    const std::uint64_t p = K.characteristic();
    const AlgElem x = K.algebra()->gen(K.steps()[g.step].gen_index);
    AlgElem power = x;
    const unsigned bound = std::max<unsigned>(1, K.classify(base_len).insep_exponent);
    for (unsigned i = 0; i < bound; ++i) {
        power = power.pow(p);
        if (lies_in_base(K, base_len, power)) return true;
    }
    return false;
}

struct InsepSet {
    std::vector<std::string> names;
    std::vector<RatFunc> images;   // when the tower has an ambient form
    std::vector<std::size_t> steps;
};

InsepSet insep_set(const FieldTower& K, const SeparabilityProfile& prof) {
    InsepSet s;
    for (const auto& g : prof.insep) {
        s.names.push_back(g.name);
        s.steps.push_back(g.step);
        if (K.ambient() && K.steps()[g.step].image) s.images.push_back(*K.steps()[g.step].image);
    }
    return s;
}

// Tower with the given ambient elements adjoined one by one; elements
// already in the field are skipped.
FieldTower adjoin_all(FieldTower t, const std::vector<RatFunc>& gens) {
    std::size_t n = 0;
    for (const auto& h : gens) {
        try {
            tower_element(t, h);
            continue;
        } catch (const Error& e) {
            if (e.code() != ErrorCode::NotInField) throw;
        }
        t = adjoin_insep(t, h, "_s" + std::to_string(++n) + "_" + std::to_string(t.steps().size()));
    }
    return t;
}

template <class T>
std::vector<T> pick(const std::vector<T>& v, const std::vector<std::size_t>& idx) {
    std::vector<T> out;
    for (std::size_t i : idx) out.push_back(v.at(i));
    return out;
}

struct Degrees {
    std::uint64_t deg_k = 0;
    std::uint64_t deg_l = 0;
};

Degrees ambient_degrees(const NamedField& K, const NamedField& L, const std::vector<RatFunc>& gens) {
    const FieldTower k = base_of(K);
    Degrees d;
    d.deg_k = *adjoin_all(k, gens).degree(k.steps().size());
    d.deg_l = *adjoin_all(L.tower, gens).degree(L.tower.steps().size());
    return d;
}

std::optional<Decomposition> try_decompose(const TensorAlgebra& t, std::vector<std::string>& notes) {
    try {
        return decompose_local(t);
    } catch (const Error& e) {
        if (e.code() != ErrorCode::OracleUnavailable && e.code() != ErrorCode::UnsupportedField) throw;
        notes.push_back(std::string("direct decomposition unavailable: ") + e.what());
        return std::nullopt;
    }
}

// The nilradical element with the lowest leading monomial.
std::string render_nilpotent(const TensorAlgebra& t, const Decomposition& d) {
    auto lead = [&](const AlgElem& e) {
        std::vector<AlgElem> c = t.coords(e);
        std::size_t i = c.size();
        while (i > 0 && c[i - 1].is_zero()) --i;
        return i;
    };
    const AlgElem* best = &d.nilradical.front();
    for (const auto& n : d.nilradical) {
        if (lead(n) < lead(*best)) best = &n;
    }
    return t.render(*best);
}

NilpotentWitness nilpotent_witness(const TensorAlgebra& t, const Decomposition& d) {
    NilpotentWitness w;
    w.element = render_nilpotent(t, d);
    for (const auto& f : d.factors) {
        if (f.is_field()) continue;
        w.nilpotency_index = f.nilpotency_index;
        w.edim = f.edim;
        break;
    }
    w.krull_dim = 0;
    return w;
}

IdempotentWitness idempotent_witness(const TensorAlgebra& t, const Decomposition& d) {
    IdempotentWitness w;
    w.over_k = true;
    for (const auto& f : d.factors) {
        w.idempotents.push_back(t.render(f.idempotent));
        w.residue_fields.push_back(f.residue);
        if (!f.residue_degree_over_k) w.over_k = false;
    }
    for (const auto& f : d.factors) {
        w.residue_degrees.push_back(w.over_k ? *f.residue_degree_over_k : f.residue_degree);
    }
    return w;
}

// Greedy removal of generators while the degrees still differ.
DegreeWitness minimize_degree_witness(const NamedField& K, const NamedField& L, const InsepSet& s) {
    std::vector<std::size_t> idx(s.names.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    Degrees cur = ambient_degrees(K, L, s.images);
    bool changed = true;
    while (changed && idx.size() > 1) {
        changed = false;
        for (std::size_t drop = 0; drop < idx.size(); ++drop) {
            std::vector<std::size_t> trial = idx;
            trial.erase(trial.begin() + static_cast<std::ptrdiff_t>(drop));
            Degrees d = ambient_degrees(K, L, pick(s.images, trial));
            if (d.deg_k != d.deg_l) {
                idx = trial;
                cur = d;
                changed = true;
                break;
            }
        }
    }
    DegreeWitness w;
    w.subset = pick(s.names, idx);
    w.deg_k = cur.deg_k;
    w.deg_l = cur.deg_l;
    w.source = "ambient";
    return w;
}

std::vector<std::vector<std::size_t>> subsets_by_size(std::size_t n) {
    std::vector<std::vector<std::size_t>> out;
    for (std::size_t size = 0; size <= n; ++size) {
        std::vector<bool> sel(n, false);
        std::fill(sel.begin(), sel.begin() + static_cast<std::ptrdiff_t>(size), true);
        do {
            std::vector<std::size_t> s;
            for (std::size_t i = 0; i < n; ++i) {
                if (sel[i]) s.push_back(i);
            }
            out.push_back(s);
        } while (std::prev_permutation(sel.begin(), sel.end()));
    }
    return out;
}

std::vector<std::string> basis_strings(const SubfieldBasis& b) {
    std::vector<std::string> out;
    for (const auto& e : b.elements()) out.push_back(e.to_string());
    return out;
}

// Verdict with the split hypothesis certified: S purely inseparable over k.
struct SplitData {
    SeparabilityProfile profile;
    InsepSet s;
    bool ok = false;
    std::string reason;
};

SplitData split_data(const NamedField& K) {
    SplitData d;
    d.profile = K.tower.classify(K.base_len);
    if (d.profile.shape == Shape::Unsplit) {
        d.reason = K.name + ": " + d.profile.reason;
        return d;
    }
    for (const auto& g : d.profile.insep) {
        if (!purely_inseparable_over_base(K.tower, K.base_len, g)) {
            d.reason = K.name + ": generator " + g.name + " has no p-power in the base";
            return d;
        }
    }
    d.s = insep_set(K.tower, d.profile);
    d.ok = true;
    return d;
}

bool separable_only(const NamedField& F) { return F.tower.classify(F.base_len).shape == Shape::SeparableOnly; }

bool algebraic(const NamedField& F) { return td_over_base(F) == 0; }

std::uint64_t product_degree(const std::vector<mpz_class>& k_rad, const std::vector<mpz_class>& l_rad,
                             std::size_t& meet_dim) {
    // Radicands as vectors over F2 indexed by -1 and the primes dividing them.
    auto vector_of = [](const mpz_class& d) {
        std::set<std::string> support;
        mpz_class n = d;
        if (n < 0) {
            support.insert("-1");
            n = -n;
        }
        for (mpz_class q = 2; q * q <= n; ++q) {
            unsigned e = 0;
            while (n % q == 0) {
                n /= q;
                ++e;
            }
            if (e % 2) support.insert(q.get_str());
        }
        if (n > 1) support.insert(n.get_str());
        return support;
    };
    auto rank_of = [&](const std::vector<mpz_class>& rad) {
        std::vector<std::set<std::string>> rows;
        for (const auto& d : rad) rows.push_back(vector_of(d));
        std::size_t r = 0;
        std::vector<std::set<std::string>> basis;
        for (auto v : rows) {
            for (const auto& b : basis) {
                if (v.count(*b.begin())) {
                    std::set<std::string> x;
                    std::set_symmetric_difference(v.begin(), v.end(), b.begin(), b.end(), std::inserter(x, x.end()));
                    v = x;
                }
            }
            if (!v.empty()) {
                // Keep basis vectors with distinct leading entries.
                for (auto& b : basis) {
                    if (b.count(*v.begin())) {
                        std::set<std::string> x;
                        std::set_symmetric_difference(b.begin(), b.end(), v.begin(), v.end(),
                                                      std::inserter(x, x.end()));
                        b = x;
                    }
                }
                basis.push_back(v);
                ++r;
            }
        }
        return r;
    };
    std::vector<mpz_class> all = k_rad;
    all.insert(all.end(), l_rad.begin(), l_rad.end());
    const std::size_t rk = rank_of(k_rad);
    const std::size_t rl = rank_of(l_rad);
    const std::size_t rs = rank_of(all);
    meet_dim = rk + rl - rs;
    return std::uint64_t{1} << rs;
}

std::vector<mpz_class> radicands(const MultiquadraticData& d) {
    std::vector<mpz_class> out;
    for (const auto& r : d.radicands) out.push_back(squarefree_part(mpq_class(r)).first);
    return out;
}

}  // namespace

std::string_view answer_name(Answer a) {
    switch (a) {
        case Answer::Yes:
            return "regular";
        case Answer::No:
            return "not_regular";
        case Answer::HypothesisNotVerified:
            return "hypothesis_not_verified";
    }
    return "hypothesis_not_verified";
}

std::size_t td_over_base(const NamedField& f) { return f.tower.td(f.base_len); }

std::size_t dim_tensor(const NamedField& K, const NamedField& L) {
    check_pair(K, L);
    return std::min(td_over_base(K), td_over_base(L));
}

Verdict check_theorem2(const NamedField& K, const NamedField& L) {
    check_pair(K, L);
    Verdict v;
    set_field_noetherian(v, K, L);
    SplitData sd = split_data(K);
    if (!sd.ok) {
        v.regular = Answer::HypothesisNotVerified;
        v.notes.push_back("split hypothesis not certified: " + sd.reason);
        return v;
    }
    add_rule(v, kSplitShape);
    if (sd.profile.shape == Shape::SeparableThenInsep) {
        add_rule(v, kSeparableGeometric);
        add_rule(v, kStripSeparable);
    }
    add_rule(v, kDegreeCriterion);

    const bool ambient = K.tower.ambient() && L.tower.ambient() && sd.s.images.size() == sd.s.names.size();
    Degrees full;
    if (ambient) {
        try {
            full = ambient_degrees(K, L, sd.s.images);
        } catch (const Error& e) {
            if (e.code() != ErrorCode::AmbientUnavailable) throw;
            if (sd.profile.shape != Shape::InsepOnly) throw;
            v.notes.push_back(std::string("ambient degrees unavailable: ") + e.what());
            full = {};
        }
    }
    std::string source = "ambient";
    if (!ambient || full.deg_k == 0) {
        if (sd.profile.shape != Shape::InsepOnly) {
            fail(ErrorCode::AmbientUnavailable, K.name + " needs an ambient form to separate K_i from K_s");
        }
        // K = K_i: [K:k] against [KL:L], the residue degree of the local
        // algebra K (x) L.
        TensorAlgebra t = build_tensor(K.tower, L.tower, K.base_len);
        std::vector<std::string> notes;
        std::optional<Decomposition> d = try_decompose(t, notes);
        if (!d) fail(ErrorCode::OracleUnavailable, notes.front());
        full.deg_k = *K.tower.degree(K.base_len);
        full.deg_l = d->factors.at(0).residue_degree;
        source = "tower";
    }

    if (full.deg_k == full.deg_l) {
        v.regular = Answer::Yes;
        add_rule(v, kFullSet);
        DegreeWitness w{sd.s.names, full.deg_k, full.deg_l, source};
        v.witnesses.push_back(w);
        return v;
    }
    v.regular = Answer::No;
    if (source == "ambient") {
        v.witnesses.push_back(minimize_degree_witness(K, L, sd.s));
        try {
            for (const auto& sub : subsets_by_size(sd.s.names.size())) {
                IntersectionWitness iw = check_condition_v(K, L, sub);
                if (!iw.equal) {
                    add_rule(v, kIntersectionCriterion);
                    v.witnesses.push_back(iw);
                    break;
                }
            }
        } catch (const Error& e) {
            if (e.code() != ErrorCode::AmbientUnavailable) throw;
        }
    } else {
        v.witnesses.push_back(DegreeWitness{sd.s.names, full.deg_k, full.deg_l, source});
    }
    return v;
}

IntersectionWitness check_condition_v(const NamedField& K, const NamedField& L, const std::vector<std::size_t>& subset) {
    check_pair(K, L);
    SplitData sd = split_data(K);
    if (!sd.ok) fail(ErrorCode::UnsplitTower, sd.reason);
    if (!K.tower.ambient() || !L.tower.ambient() || sd.s.images.size() != sd.s.names.size()) {
        fail(ErrorCode::AmbientUnavailable, "condition (v) needs ambient forms of both fields");
    }
    const FieldTower k = base_of(K);
    ContextPtr ctx = context_for({&K.tower, &L.tower});
    const std::vector<RatFunc> sub = pick(sd.s.images, subset);
    SubfieldBasis kb = field_basis(ctx, k, k.steps().size());
    SubfieldBasis ki = extend(kb, sd.s.images);
    SubfieldBasis ls = extend(field_basis(ctx, L.tower, L.tower.steps().size()), sub);
    SubfieldBasis ks = extend(kb, sub);
    SubfieldBasis meet = intersect(ki, ls);
    IntersectionWitness w;
    w.subset = pick(sd.s.names, subset);
    w.meet_basis = basis_strings(meet);
    w.k_basis = basis_strings(ks);
    w.equal = meet == ks;
    return w;
}

FieldIntersection intersect_fields(const NamedField& K, const NamedField& L) {
    check_pair(K, L);
    if (!K.tower.ambient() || !L.tower.ambient()) {
        fail(ErrorCode::AmbientUnavailable, "intersections need ambient forms of both fields");
    }
    const FieldTower k = base_of(K);
    ContextPtr ctx = context_for({&K.tower, &L.tower});
    SubfieldBasis kb = field_basis(ctx, K.tower, K.tower.steps().size());
    SubfieldBasis lb = field_basis(ctx, L.tower, L.tower.steps().size());
    SubfieldBasis base = field_basis(ctx, k, k.steps().size());
    SubfieldBasis meet = intersect(kb, lb);
    FieldIntersection r;
    r.meet_basis = basis_strings(meet);
    r.base_basis = basis_strings(base);
    r.equals_base = meet == base;
    r.equals_first = meet == kb;
    r.equals_second = meet == lb;
    return r;
}

Answer theorem2_by_intersections(const NamedField& K, const NamedField& L) {
    SplitData sd = split_data(K);
    if (!sd.ok) return Answer::HypothesisNotVerified;
    for (const auto& sub : subsets_by_size(sd.s.names.size())) {
        if (!check_condition_v(K, L, sub).equal) return Answer::No;
    }
    return Answer::Yes;
}

Verdict check_lemma1(const NamedField& K, const NamedField& L) {
    check_pair(K, L);
    if (!separable_only(K)) {
        fail(ErrorCode::SeparabilityNotCertified, K.name + " is not certified separable over the base");
    }
    Verdict v;
    set_field_noetherian(v, K, L);
    add_rule(v, kSeparableGeometric);
    add_rule(v, kSeparableBaseChange);
    add_rule(v, kFieldRegular);
    v.regular = Answer::Yes;
    return v;
}

Verdict check_self_tensor(const NamedField& K) {
    Verdict v;
    set_field_noetherian(v, K, K);
    add_rule(v, kSelfTensor);
    SplitData sd = split_data(K);
    if (sd.profile.shape == Shape::SeparableOnly) {
        v.regular = Answer::Yes;
        v.witnesses.push_back(SeparabilityWitness{K.name, std::string(shape_name(sd.profile.shape)), "", "separable"});
        return v;
    }
    if (!sd.ok) {
        v.regular = Answer::HypothesisNotVerified;
        v.notes.push_back("separability undecided: " + sd.reason);
        return v;
    }
    const InsepGenerator& g = sd.profile.insep.front();
    v.regular = Answer::No;
    v.witnesses.push_back(SeparabilityWitness{
        K.name, std::string(shape_name(sd.profile.shape)), g.name,
        g.name + " is purely inseparable over the base, of exponent " + std::to_string(g.m)});
    if (algebraic(K)) {
        TensorAlgebra t = build_tensor(K.tower, K.tower, K.base_len);
        std::optional<Decomposition> d = try_decompose(t, v.notes);
        if (d) {
            if (d->regular()) fail(ErrorCode::ConsistencyFailure, "K (x) K decomposes as regular");
            add_rule(v, kDirect);
            v.witnesses.push_back(nilpotent_witness(t, *d));
        }
    }
    return v;
}

Verdict check_separable_algebraic(const NamedField& K, const NamedField& L) {
    check_pair(K, L);
    if (!separable_only(K) || !algebraic(K)) {
        fail(ErrorCode::SeparabilityNotCertified, K.name + " is not certified separable algebraic");
    }
    Verdict v;
    set_field_noetherian(v, K, L);
    add_rule(v, kZeroDim);
    TensorAlgebra t = build_tensor(K.tower, L.tower, K.base_len);
    Decomposition d = decompose_local(t);
    add_rule(v, kDirect);
    v.regular = d.regular() ? Answer::Yes : Answer::No;
    if (v.regular == Answer::No) fail(ErrorCode::ConsistencyFailure, "a separable algebraic tensor product is not reduced");
    v.witnesses.push_back(idempotent_witness(t, d));

    if (K.tower.characteristic() == 0 && K.base_len == 0 && K.tower.ring()->arity() == 0 &&
        L.tower.ring()->arity() == 0 && L.tower.steps().size() > 0) {
        auto kd = multiquadratic_data(K.tower.algebra());
        auto ld = multiquadratic_data(L.tower.algebra());
        if (kd && ld) {
            std::size_t meet_dim = 0;
            const std::uint64_t compositum = product_degree(radicands(*kd), radicands(*ld), meet_dim);
            const std::uint64_t n = std::uint64_t{1} << meet_dim;
            add_rule(v, kGaloisCount);
            const std::uint64_t dim_k = *K.tower.degree();
            const std::uint64_t dim_l = *L.tower.degree();
            bool ok = d.factors.size() == n;
            for (const auto& f : d.factors) ok = ok && f.residue_degree_over_k == compositum;
            ok = ok && dim_k * dim_l == n * compositum;
            if (!ok) {
                fail(ErrorCode::ConsistencyFailure, "factor count or residue degrees disagree with n = [K meet L : Q] = " +
                                                        std::to_string(n));
            }
            v.notes.push_back("n = [K meet L : Q] = " + std::to_string(n) + "; " + std::to_string(d.factors.size()) +
                              " factors of degree " + std::to_string(compositum) + " over Q; " +
                              std::to_string(dim_k * dim_l) + " = " + std::to_string(n) + "*" +
                              std::to_string(compositum));
        }
    }
    return v;
}

CrossCheck cross_validate(const NamedField& K, const NamedField& L) {
    check_pair(K, L);
    CrossCheck c;
    Verdict& v = c.engine;
    if (separable_only(K) && algebraic(K)) {
        try {
            v = check_separable_algebraic(K, L);
            c.constructible = true;
            c.direct = v.regular == Answer::Yes;
            return c;
        } catch (const Error& e) {
            if (e.code() != ErrorCode::OracleUnavailable && e.code() != ErrorCode::UnsupportedField) throw;
            v = check_lemma1(K, L);
            v.notes.push_back(std::string("direct decomposition unavailable: ") + e.what());
        }
    } else if (separable_only(K)) {
        v = check_lemma1(K, L);
    } else if (separable_only(L) && algebraic(L)) {
        try {
            v = check_separable_algebraic(L, K);
            c.constructible = true;
            c.direct = v.regular == Answer::Yes;
            return c;
        } catch (const Error& e) {
            if (e.code() != ErrorCode::OracleUnavailable && e.code() != ErrorCode::UnsupportedField) throw;
            v = check_lemma1(L, K);
            v.notes.push_back(std::string("direct decomposition unavailable: ") + e.what());
        }
    } else if (separable_only(L)) {
        v = check_lemma1(L, K);
    } else {
        v = check_theorem2(K, L);
        if (v.regular == Answer::HypothesisNotVerified) {
            Verdict other = check_theorem2(L, K);
            if (other.regular != Answer::HypothesisNotVerified) {
                other.notes.insert(other.notes.begin(), v.notes.begin(), v.notes.end());
                v = other;
            }
        }
    }

    // The explicit algebra, built on whichever side is algebraic.
    const NamedField* a = algebraic(K) ? &K : (algebraic(L) ? &L : nullptr);
    if (!a) return c;
    const NamedField& b = a == &K ? L : K;
    TensorAlgebra t = build_tensor(a->tower, b.tower, a->base_len);
    std::optional<Decomposition> d = try_decompose(t, v.notes);
    if (!d) return c;
    c.constructible = true;
    c.direct = d->regular();
    add_rule(v, kDirect);
    if (!d->is_reduced()) v.witnesses.push_back(nilpotent_witness(t, *d));
    if (d->factors.size() > 1) v.witnesses.push_back(idempotent_witness(t, *d));
    if (v.regular != Answer::HypothesisNotVerified) c.agree = (v.regular == Answer::Yes) == c.direct;
    return c;
}

Verdict decide_regular(const NamedField& K, const NamedField& L) {
    CrossCheck c = cross_validate(K, L);
    if (!c.agree) {
        fail(ErrorCode::ConsistencyFailure, "engine says " + std::string(answer_name(c.engine.regular)) +
                                                " but the explicit algebra says " +
                                                (c.direct ? "regular" : "not regular"));
    }
    if (c.constructible && c.engine.regular == Answer::HypothesisNotVerified) {
        c.engine.notes.push_back(std::string("explicit algebra: ") + (c.direct ? "regular" : "not regular") +
                                 " (not used as a verdict)");
    }
    return c.engine;
}

namespace {

bool flag(const std::optional<bool>& f) { return f.value_or(false); }

std::vector<std::string> echo_flags(const AlgebraDescriptor& d) {
    std::vector<std::string> out;
    auto one = [&](const char* name, const std::optional<bool>& f) {
        if (f) out.push_back(d.name + "." + name + " = " + (*f ? "true" : "false") + " (declared)");
    };
    one("regular", d.regular);
    one("residually_separable", d.residually_separable);
    one("geometrically_regular", d.geometrically_regular);
    one("finitely_generated", d.finitely_generated);
    one("tensor_noetherian", d.tensor_noetherian);
    return out;
}

// Residual separability: checked on supplied residue fields, otherwise the
// declaration.
std::optional<bool> residually_separable(const AlgebraDescriptor& d, std::vector<std::string>& notes) {
    if (!d.residue_fields.empty()) {
        bool all = true;
        for (const auto& f : d.residue_fields) {
            SplitData sd = split_data(f);
            if (sd.profile.shape != Shape::SeparableOnly) all = false;
        }
        if (d.residually_separable && *d.residually_separable != all) {
            fail(ErrorCode::InvalidArgument,
                 d.name + ": declared residual separability contradicts the supplied residue fields");
        }
        notes.push_back(d.name + (all ? " is" : " is not") + " residually separable (checked on " +
                        std::to_string(d.residue_fields.size()) + " residue fields)");
        return all;
    }
    return d.residually_separable;
}

const std::vector<std::string> kLevels = {"i", "ii", "iii", "iv", "v"};

}  // namespace

Verdict check_theorem3(const AlgebraDescriptor& a, const AlgebraDescriptor& b,
                       const std::vector<std::string>& assumed) {
    Verdict v;
    for (const auto* d : {&a, &b}) {
        for (auto& s : echo_flags(*d)) v.assumptions.push_back(s);
    }
    for (const auto& lvl : assumed) {
        if (std::find(kLevels.begin(), kLevels.end(), lvl) == kLevels.end()) {
            fail(ErrorCode::InvalidArgument, "unknown assertion level " + lvl);
        }
        v.assumptions.push_back("assertion (" + lvl + ") holds (declared)");
    }

    // Noetherianity of A (x) B.
    if (flag(a.tensor_noetherian) || flag(b.tensor_noetherian)) {
        v.noetherian = true;
        v.noetherian_rule = "declared";
    } else if ((flag(a.finitely_generated) && flag(b.regular)) || (flag(b.finitely_generated) && flag(a.regular))) {
        v.noetherian = true;
        v.noetherian_rule = kFiniteGeneration.name;
        add_rule(v, Rule{kFiniteGeneration.name, "a finitely generated k-algebra tensored with a Noetherian (regular) "
                                                 "k-algebra is Noetherian"});
    } else {
        fail(ErrorCode::InsufficientDescriptors, "Noetherianity of " + a.name + " (x) " + b.name +
                                                     " is neither declared nor derivable from finite generation");
    }
    add_rule(v, kFiberChain);

    std::set<std::string> held(assumed.begin(), assumed.end());
    std::set<std::string> failed;

    // Fibers over the supplied residue fields; the lists are taken as
    // complete.
    const bool fibers_known = !a.residue_fields.empty() && !b.residue_fields.empty();
    bool fiber_fails = false;
    bool fiber_unknown = false;
    if (fibers_known) {
        for (const auto& f : a.residue_fields) {
            for (const auto& g : b.residue_fields) {
                Verdict fv = decide_regular(f, g);
                FiberWitness w{f.name, g.name, fv.regular, fv.rules.empty() ? "" : fv.rules.front().name};
                for (const auto& r : fv.rules) {
                    if (r.name == kDegreeCriterion.name || r.name == kSeparableBaseChange.name ||
                        r.name == kZeroDim.name) {
                        w.rule = r.name;
                    }
                }
                v.witnesses.push_back(w);
                fiber_fails = fiber_fails || fv.regular == Answer::No;
                fiber_unknown = fiber_unknown || fv.regular == Answer::HypothesisNotVerified;
            }
        }
    }
    if (fiber_fails) {
        failed.insert("i");
        if (held.count("i")) fail(ErrorCode::InvalidArgument, "assertion (i) declared but a fiber is not regular");
    }
    if (flag(a.regular) && flag(b.regular)) {
        held.insert("v");
        if (fibers_known && !fiber_fails && !fiber_unknown) held.insert("i");
    }
    if (a.regular == false || b.regular == false) failed.insert("v");

    const std::optional<bool> ra = residually_separable(a, v.notes);
    const std::optional<bool> rb = residually_separable(b, v.notes);
    const bool equivalence = ra.value_or(false) || rb.value_or(false);
    if (equivalence) {
        add_rule(v, kSeparableGeometric);
        add_rule(v, kSeparableBaseChange);
        add_rule(v, kResidualEquivalence);
        if (held.count("v") || held.count("iv") || held.count("ii") || held.count("iii") || held.count("i")) {
            held.insert(kLevels.begin(), kLevels.end());
        }
    }

    // Forward closure.
    if (held.count("i")) {
        held.insert("ii");
        held.insert("iii");
    }
    if (held.count("ii") || held.count("iii")) held.insert("iv");
    if (held.count("iv")) held.insert("v");
    if (failed.count("v")) {
        for (const auto& l : kLevels) failed.insert(l);
    }
    if (equivalence && failed.count("iv")) failed.insert(kLevels.begin(), kLevels.end());
    for (const auto& l : kLevels) {
        if (held.count(l) && failed.count(l)) {
            fail(ErrorCode::InvalidArgument, "assertion (" + l + ") is both declared and refuted");
        }
    }
    for (const auto& l : kLevels) {
        if (held.count(l)) v.established.push_back(l);
    }

    if (held.count("iv")) {
        v.regular = Answer::Yes;
    } else if (failed.count("iv")) {
        v.regular = Answer::No;
    } else {
        v.regular = Answer::HypothesisNotVerified;
        if (!equivalence) v.notes.push_back("neither algebra is known to be residually separable");
    }
    if (failed.count("i") && held.count("ii")) {
        v.notes.push_back("assertion (ii) holds while (i) fails: the implication (i) => (ii) does not reverse");
    }
    if (failed.count("i") && held.count("iii")) {
        v.notes.push_back("assertion (iii) holds while (i) fails: the implication (i) => (iii) does not reverse");
    }
    return v;
}

}  // namespace regtensor
