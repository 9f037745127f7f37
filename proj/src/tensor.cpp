#include "tensor.hpp"

#include <functional>
#include <map>

#include "error.hpp"
#include "factor.hpp"

namespace regtensor {

namespace {

// Images in `target` of the generators of K's algebra: k's own algebraic
// generators go to L's (tower mode) or to their ambient images, the
// generators above k to `above`.
std::vector<AlgElem> generator_images(const TensorAlgebra& t, const AlgebraPtr& target, std::size_t count,
                                      const std::vector<AlgElem>& above) {
    const std::size_t kg = t.K.algebraic_before(t.base_len);
    std::vector<AlgElem> out;
    for (std::size_t g = 0; g < count; ++g) {
        if (g >= kg) {
            out.push_back(target->embed(above.at(g - kg)));
        } else if (t.ambient) {
            out.push_back(target->scalar(ambient_image(t.K, t.K.algebra()->gen(g)).in_ring(target->ring())));
        } else {
            out.push_back(target->gen(g));
        }
    }
    return out;
}

// Image in `target` of an element of a prefix of K's algebra.
AlgElem lift_k_element(const TensorAlgebra& t, const AlgElem& c, const AlgebraPtr& target,
                       const std::vector<AlgElem>& above) {
    const AlgebraPtr& src = c.algebra();
    std::vector<AlgElem> gens = generator_images(t, target, src->num_gens(), above);
    AlgElem acc = target->zero();
    const auto& co = c.coords();
    for (std::size_t idx = 0; idx < co.size(); ++idx) {
        if (co[idx].is_zero()) continue;
        RatFunc r = t.ambient ? ambient_image(t.K, t.K.algebra()->scalar(co[idx])).in_ring(target->ring())
                              : co[idx].in_ring(target->ring());
        AlgElem term = target->scalar(r);
        auto ex = src->exponents(idx);
        for (std::size_t g = 0; g < ex.size(); ++g) {
            if (ex[g]) term = term * gens[g].pow(ex[g]);
        }
        acc += term;
    }
    return acc;
}

// Relation of K's j-th step above k with coefficients pushed into `target`.
AlgPoly lifted_relation(const TensorAlgebra& t, std::size_t j, const AlgebraPtr& target,
                        const std::vector<AlgElem>& above) {
    AlgPoly f = t.K.minpoly(t.k_steps[j]);
    std::vector<AlgElem> c;
    for (std::size_t i = 0; i < f.coeffs().size(); ++i) {
        c.push_back(i + 1 == f.coeffs().size() ? target->one() : lift_k_element(t, f.coeffs()[i], target, above));
    }
    return AlgPoly(target->one(), std::move(c));
}

// Canonical L-basis of a span: echelon form with pivots taken from the last
// coordinate backwards, each pivot normalized to 1.
std::vector<AlgElem> span(const TensorAlgebra& t, const std::vector<AlgElem>& elems) {
    const std::size_t n = t.dim();
    Matrix<AlgElem> m;
    for (const auto& e : elems) {
        if (e.is_zero()) continue;
        auto v = t.coords(e);
        m.emplace_back(v.rbegin(), v.rend());
    }
    if (m.empty()) return {};
    Echelon<AlgElem> ech = rref(std::move(m), n);
    std::vector<AlgElem> out;
    for (auto& row : ech.rows) out.push_back(t.from_coords(std::vector<AlgElem>(row.rbegin(), row.rend())));
    return out;
}

std::vector<AlgElem> products(const std::vector<AlgElem>& a, const std::vector<AlgElem>& b) {
    std::vector<AlgElem> out;
    for (const auto& x : a) {
        for (const auto& y : b) out.push_back(x * y);
    }
    return out;
}

// Ideal generated by `gens`: L-span of the X-monomial multiples.
std::vector<AlgElem> ideal_span(const TensorAlgebra& t, const std::vector<AlgElem>& gens) {
    std::vector<AlgElem> mult;
    for (std::size_t a = 0; a < t.dim(); ++a) mult.push_back(t.alg->basis(a * t.scalars->dim()));
    return span(t, products(mult, gens));
}

// Fills the maximal-ideal data of a local factor whose maximal ideal has
// L-basis `m` and is generated as an ideal by `gens`.
void local_data(const TensorAlgebra& t, LocalFactor& f, std::vector<AlgElem> m, const std::vector<AlgElem>& gens) {
    f.max_ideal = std::move(m);
    f.length_dim = f.residue_degree + f.max_ideal.size();
    if (f.max_ideal.empty()) {
        f.nilpotency_index = 1;
        f.edim = 0;
        return;
    }
    std::vector<AlgElem> sq = span(t, products(gens, f.max_ideal));
    const std::size_t quotient = f.max_ideal.size() - sq.size();
    if (quotient % f.residue_degree != 0) {
        fail(ErrorCode::InternalInconsistency, "m/m^2 is not a vector space over the residue field");
    }
    f.edim = quotient / f.residue_degree;
    std::size_t index = 2;
    std::vector<AlgElem> power = std::move(sq);
    while (!power.empty()) {
        if (index > t.dim() + 1) fail(ErrorCode::InternalInconsistency, "maximal ideal is not nilpotent");
        power = span(t, products(gens, power));
        ++index;
    }
    f.nilpotency_index = index;
}

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
    std::string out;
    for (const auto& p : parts) {
        if (!out.empty()) out += sep;
        out += p;
    }
    return out;
}

std::optional<std::uint64_t> over_k(const TensorAlgebra& t, std::size_t residue_degree) {
    auto d = t.L.degree(t.base_len);
    if (!d) return std::nullopt;
    return *d * residue_degree;
}

// K purely inseparable over k, both inside the ambient field F. The algebra
// is local with residue field KL = L(x_1..x_m); x_j has degree s_j over
// L(x_1..x_{j-1}), and X_j^{s_j} minus a lift of x_j^{s_j} generates the
// maximal ideal together with the earlier such elements.
Decomposition decompose_ambient(const TensorAlgebra& t) {
    const ContextPtr& ctx = *t.ctx;
    const std::uint64_t p = t.K.characteristic();
    const std::size_t m = t.k_steps.size();
    const std::size_t sn = t.scalars->num_gens();
    std::vector<RatFunc> lbasis = field_basis(ctx, t.L, t.L.steps().size()).elements();
    const RingPtr& b0 = ctx->base_ring();
    const RatFunc zero(b0);
    const RatFunc one = RatFunc::from_int(b0, 1);

    std::vector<RatFunc> xs;
    for (auto s : t.k_steps) xs.push_back(t.K.steps()[s].image->in_ring(ctx->ring()));

    std::vector<std::size_t> deg(m, 1);
    std::vector<AlgElem> nus;
    std::vector<std::string> adjoined;
    for (std::size_t j = 0; j < m; ++j) {
        // Monomials x^beta, beta_i < deg_i, span L(x_1..x_{j-1}) over L.
        std::vector<std::vector<std::uint32_t>> betas{{}};
        for (std::size_t i = 0; i < j; ++i) {
            std::vector<std::vector<std::uint32_t>> next;
            for (const auto& b : betas) {
                for (std::uint32_t e = 0; e < deg[i]; ++e) {
                    auto nb = b;
                    nb.push_back(e);
                    next.push_back(std::move(nb));
                }
            }
            betas = std::move(next);
        }
        std::vector<RatFunc> mono_val;
        std::vector<AlgElem> mono_elem;
        for (const auto& b : betas) {
            RatFunc v = RatFunc::from_int(ctx->ring(), 1);
            std::vector<std::uint32_t> ex(sn + m, 0);
            for (std::size_t i = 0; i < b.size(); ++i) {
                if (b[i]) v = v * xs[i].pow(b[i]);
                ex[sn + i] = b[i];
            }
            mono_val.push_back(v);
            mono_elem.push_back(t.alg->basis(t.alg->index_of(ex)));
        }
        const std::size_t cols = betas.size() * lbasis.size();
        Matrix<RatFunc> sys(ctx->size(), std::vector<RatFunc>(cols, zero));
        for (std::size_t bi = 0; bi < betas.size(); ++bi) {
            for (std::size_t li = 0; li < lbasis.size(); ++li) {
                auto col = ctx->decompose(lbasis[li] * mono_val[bi]);
                for (std::size_t r = 0; r < col.size(); ++r) sys[r][bi * lbasis.size() + li] = col[r];
            }
        }
        const std::size_t d = t.alg->degree(sn + j);
        std::size_t s = 1;
        for (; s < d; s *= p) {
            auto res = solve(sys, cols, ctx->decompose(xs[j].pow(s)), zero, one);
            if (!res.solution) continue;
            AlgElem lift = t.alg->zero();
            for (std::size_t bi = 0; bi < betas.size(); ++bi) {
                RatFunc lam(ctx->ring());
                for (std::size_t li = 0; li < lbasis.size(); ++li) {
                    const RatFunc& mu = (*res.solution)[bi * lbasis.size() + li];
                    if (!mu.is_zero()) lam = lam + ctx->lift(mu) * lbasis[li];
                }
                if (!lam.is_zero()) lift += mono_elem[bi].scaled(lam);
            }
            nus.push_back(t.x(j).pow(s) - lift);
            break;
        }
        deg[j] = s;
        if (s > 1) adjoined.push_back(xs[j].to_string());
    }

    LocalFactor f(t.alg->one());
    for (auto s : deg) f.residue_degree *= s;
    f.residue_degree_over_k = over_k(t, f.residue_degree);
    f.residue = adjoined.empty() ? "L" : "L(" + join(adjoined, ", ") + ")";
    for (std::size_t j = 0; j < m; ++j) f.multiplicities.push_back(static_cast<unsigned>(t.alg->degree(sn + j) / deg[j]));
    std::vector<AlgElem> ideal = ideal_span(t, nus);
    local_data(t, f, ideal, nus);
    Decomposition out;
    out.nilradical = f.max_ideal;
    out.factors.push_back(std::move(f));
    return out;
}

struct Branch {
    AlgebraPtr kappa;
    std::vector<AlgElem> images;
    std::vector<unsigned> mult;
    std::vector<std::string> relations;
};

// L-coordinates of an element of a residue field kappa over L.
std::vector<AlgElem> residue_coords(const AlgebraPtr& lalg, const AlgElem& e) {
    const std::size_t dl = lalg->dim();
    const auto& c = e.coords();
    std::vector<AlgElem> out;
    for (std::size_t w = 0; w * dl < c.size(); ++w) {
        out.push_back(lalg->element(std::vector<RatFunc>(c.begin() + static_cast<std::ptrdiff_t>(w * dl),
                                                         c.begin() + static_cast<std::ptrdiff_t>((w + 1) * dl))));
    }
    return out;
}

Decomposition decompose_tower(const TensorAlgebra& t) {
    const AlgebraPtr& lalg = t.L.algebra();
    const std::size_t m = t.k_steps.size();
    const std::size_t sn = t.scalars->num_gens();
    std::vector<Branch> branches{{lalg, {}, {}, {}}};
    for (std::size_t j = 0; j < m; ++j) {
        std::vector<Branch> next;
        for (const auto& b : branches) {
            AlgPoly f = lifted_relation(t, j, b.kappa, b.images);
            Factorization fz = factor_over(b.kappa, f);
            if (!fz.supported) {
                fail(ErrorCode::OracleUnavailable, "cannot factor " + f.to_string(t.names[j]) + ": " + fz.reason);
            }
            for (const auto& [g, e] : fz.factors) {
                Branch nb = b;
                nb.mult.push_back(e);
                if (g.deg() == 1) {
                    nb.images.push_back(-g.coeff(0));
                } else {
                    const std::string w = "w" + std::to_string(b.kappa->num_gens() - lalg->num_gens() + 1);
                    std::vector<AlgElem> c(g.coeffs().begin(), g.coeffs().end() - 1);
                    nb.kappa = b.kappa->adjoin(w, c);
                    for (auto& im : nb.images) im = nb.kappa->embed(im);
                    nb.images.push_back(nb.kappa->gen(nb.kappa->num_gens() - 1));
                    nb.relations.push_back(g.to_string(w));
                }
                next.push_back(std::move(nb));
            }
        }
        branches = std::move(next);
    }

    // Stacked residue maps A -> kappa_b as L-matrices, one column per X-monomial.
    const std::size_t n = t.dim();
    const AlgElem lz = lalg->zero();
    const AlgElem lo = lalg->one();
    Matrix<AlgElem> phi;
    std::vector<std::size_t> offset;
    std::vector<std::size_t> rdeg;
    for (const auto& b : branches) {
        const std::size_t r = b.kappa->dim() / lalg->dim();
        offset.push_back(phi.size());
        rdeg.push_back(r);
        Matrix<AlgElem> block(r, std::vector<AlgElem>(n, lz));
        for (std::size_t a = 0; a < n; ++a) {
            auto ex = t.alg->exponents(a * t.scalars->dim());
            AlgElem v = b.kappa->one();
            for (std::size_t j = 0; j < m; ++j) {
                if (ex[sn + j]) v = v * b.images[j].pow(ex[sn + j]);
            }
            auto c = residue_coords(lalg, v);
            for (std::size_t i = 0; i < r; ++i) block[i][a] = c[i];
        }
        for (auto& row : block) phi.push_back(std::move(row));
    }
    std::vector<AlgElem> kernel;
    for (auto& v : nullspace(phi, n, lz, lo)) kernel.push_back(t.from_coords(v));

    Decomposition out;
    out.nilradical = span(t, kernel);
    if (out.nilradical.size() + phi.size() != n) {
        fail(ErrorCode::InternalInconsistency, "residue maps are not jointly surjective");
    }
    for (std::size_t bi = 0; bi < branches.size(); ++bi) {
        const Branch& b = branches[bi];
        LocalFactor f(t.alg->one());
        if (branches.size() > 1) {
            std::vector<AlgElem> delta(phi.size(), lz);
            delta[offset[bi]] = lo;
            auto res = solve(phi, n, delta, lz, lo);
            if (!res.solution) fail(ErrorCode::InternalInconsistency, "no element with the prescribed residues");
            AlgElem e = t.from_coords(*res.solution);
            for (int it = 0; !(e * e == e); ++it) {
                if (it > 64) fail(ErrorCode::InternalInconsistency, "idempotent lifting did not converge");
                AlgElem e2 = e * e;
                e = e2.scaled(RatFunc::from_int(t.alg->ring(), 3)) - (e2 * e).scaled(RatFunc::from_int(t.alg->ring(), 2));
            }
            f.idempotent = e;
        }
        f.residue_degree = rdeg[bi];
        f.residue_degree_over_k = over_k(t, f.residue_degree);
        f.multiplicities = b.mult;
        std::vector<std::string> images;
        for (std::size_t j = 0; j < m; ++j) images.push_back(t.names[j] + " -> " + b.images[j].to_string());
        f.residue = b.relations.empty() ? "L" : "L[" + join([&] {
            std::vector<std::string> ws;
            for (std::size_t g = lalg->num_gens(); g < b.kappa->num_gens(); ++g) ws.push_back(b.kappa->gen_name(g));
            return ws;
        }(), ", ") + "]/(" + join(b.relations, ", ") + ")";
        if (!images.empty()) f.residue += " with " + join(images, ", ");
        std::vector<AlgElem> mb;
        for (const auto& v : out.nilradical) mb.push_back(f.idempotent * v);
        mb = span(t, mb);
        local_data(t, f, mb, mb);
        out.factors.push_back(std::move(f));
    }
    return out;
}

}  // namespace

std::vector<AlgElem> TensorAlgebra::coords(const AlgElem& a) const {
    const std::size_t ds = scalars->dim();
    const auto& c = a.coords();
    std::vector<AlgElem> out;
    out.reserve(dim());
    for (std::size_t i = 0; i < dim(); ++i) {
        out.push_back(scalars->element(std::vector<RatFunc>(c.begin() + static_cast<std::ptrdiff_t>(i * ds),
                                                            c.begin() + static_cast<std::ptrdiff_t>((i + 1) * ds))));
    }
    return out;
}

AlgElem TensorAlgebra::from_coords(const std::vector<AlgElem>& v) const {
    std::vector<RatFunc> c;
    c.reserve(alg->dim());
    for (const auto& x : v) c.insert(c.end(), x.coords().begin(), x.coords().end());
    return alg->element(std::move(c));
}

AlgElem TensorAlgebra::scalar(const AlgElem& l) const {
    if (ambient) return alg->scalar(ambient_image(L, l).in_ring(alg->ring()));
    return alg->embed(l);
}

AlgElem TensorAlgebra::x(std::size_t j) const { return alg->gen(scalars->num_gens() + j); }

std::string TensorAlgebra::render_scalar(const AlgElem& s) const {
    if (ambient) return s.coords()[0].to_string();
    return render_element(L, s);
}

std::string TensorAlgebra::render(const AlgElem& a) const {
    auto c = coords(a);
    std::string out;
    for (std::size_t i = c.size(); i-- > 0;) {
        if (c[i].is_zero()) continue;
        std::string cs = render_scalar(c[i]);
        std::string mono = i == 0 ? "" : alg->monomial_string(i * scalars->dim());
        bool negative = !cs.empty() && cs[0] == '-' && cs.find_first_of(" +", 1) == std::string::npos;
        if (negative) cs = cs.substr(1);
        bool compound = cs.find_first_of(" +-/") != std::string::npos;
        std::string body;
        if (mono.empty()) {
            body = cs;
        } else if (cs == "1") {
            body = mono;
        } else {
            body = (compound ? "(" + cs + ")" : cs) + "*" + mono;
        }
        if (out.empty()) {
            out = negative ? "-" + body : body;
        } else {
            out += negative ? " - " : " + ";
            out += body;
        }
    }
    return out.empty() ? "0" : out;
}

TensorAlgebra build_tensor(const FieldTower& K, const FieldTower& L, std::size_t base_len) {
    if (K.characteristic() != L.characteristic()) fail(ErrorCode::CharMismatch, "fields of different characteristic");
    if (base_len > K.steps().size() || base_len > L.steps().size()) {
        fail(ErrorCode::BaseMismatch, "the base is longer than one of the fields");
    }
    TensorAlgebra t;
    t.k = K.prefix(base_len);
    if (!L.has_prefix(t.k)) fail(ErrorCode::BaseMismatch, "the fields do not share the base presentation");
    t.K = K;
    t.L = L;
    t.base_len = base_len;
    for (std::size_t s = base_len; s < K.steps().size(); ++s) {
        if (K.steps()[s].kind == Step::Kind::Transcendental) {
            fail(ErrorCode::NotAlgebraic, K.steps()[s].name + " is transcendental over the base");
        }
        t.k_steps.push_back(s);
    }
    const std::size_t m = t.k_steps.size();
    for (std::size_t j = 0; j < m; ++j) t.names.push_back(m == 1 ? "X" : "X" + std::to_string(j + 1));

    if (K.characteristic() > 0 && K.ambient() && L.ambient() &&
        (m == 0 || K.classify(base_len).shape == Shape::InsepOnly)) {
        try {
            t.ctx = context_for({&K, &L});
            t.ambient = true;
        } catch (const Error&) {
            t.ambient = false;
        }
    }
    t.scalars = t.ambient ? TriAlgebra::base((*t.ctx)->ring()) : L.algebra();
    t.alg = t.scalars;
    std::vector<AlgElem> images;
    for (std::size_t j = 0; j < m; ++j) {
        AlgPoly f = lifted_relation(t, j, t.alg, images);
        std::vector<AlgElem> c(f.coeffs().begin(), f.coeffs().end() - 1);
        t.alg = t.alg->adjoin(t.names[j], c);
        for (auto& im : images) im = t.alg->embed(im);
        images.push_back(t.x(j));
    }
    return t;
}

bool Decomposition::regular() const {
    for (const auto& f : factors) {
        if (!f.is_field()) return false;
    }
    return true;
}

StructureCheck verify_structure(const TensorAlgebra& a, const Decomposition& d) {
    StructureCheck c;
    c.idempotents_ok = true;
    AlgElem sum = a.alg->zero();
    for (std::size_t i = 0; i < d.factors.size(); ++i) {
        const AlgElem& e = d.factors[i].idempotent;
        if (!(e * e == e) || e.is_zero()) {
            c.idempotents_ok = false;
            c.detail = "idempotent " + std::to_string(i) + " fails e^2 = e";
        }
        for (std::size_t j = i + 1; j < d.factors.size(); ++j) {
            if (!(e * d.factors[j].idempotent).is_zero()) {
                c.idempotents_ok = false;
                c.detail = "idempotents " + std::to_string(i) + ", " + std::to_string(j) + " are not orthogonal";
            }
        }
        sum += e;
    }
    if (!sum.is_one()) {
        c.idempotents_ok = false;
        c.detail = "idempotents do not sum to 1";
    }
    c.nilradical_ok = true;
    for (const auto& v : d.nilradical) {
        if (v.is_zero() || !v.pow(a.dim()).is_zero()) {
            c.nilradical_ok = false;
            c.detail = "nilradical element " + a.render(v) + " is not nilpotent";
        }
    }
    std::size_t total = 0;
    std::size_t max_ideal = 0;
    for (const auto& f : d.factors) {
        total += f.length_dim;
        max_ideal += f.max_ideal.size();
    }
    c.dimensions_ok = total == a.dim() && max_ideal == d.nilradical.size();
    if (!c.dimensions_ok) c.detail = "local factor dimensions do not add up to " + std::to_string(a.dim());
    return c;
}

Decomposition decompose_local(const TensorAlgebra& a) {
    Decomposition d = a.ambient ? decompose_ambient(a) : decompose_tower(a);
    StructureCheck c = verify_structure(a, d);
    if (!c.idempotents_ok || !c.nilradical_ok || !c.dimensions_ok) fail(ErrorCode::InternalInconsistency, c.detail);
    return d;
}

bool regular_direct(const TensorAlgebra& a) { return decompose_local(a).regular(); }

}  // namespace regtensor
