#include "insep.hpp"

#include <algorithm>

#include "error.hpp"
#include "factor.hpp"

namespace regtensor {

namespace {

std::uint64_t power(std::uint64_t p, unsigned e) {
    std::uint64_t q = 1;
    for (unsigned i = 0; i < e; ++i) q *= p;
    return q;
}

// Maps each variable of f's ring to target variable `index` raised to `mult`.
MultiPoly remap(const MultiPoly& f, const RingPtr& target, const std::vector<std::pair<std::size_t, std::uint32_t>>& map) {
    std::vector<MultiPoly::Term> terms;
    terms.reserve(f.size());
    for (const auto& t : f.terms()) {
        Exponents e(target->arity(), 0);
        for (std::size_t v = 0; v < t.exp.size(); ++v) {
            if (t.exp[v]) e[map[v].first] += t.exp[v] * map[v].second;
        }
        terms.push_back({std::move(e), t.coef});
    }
    return MultiPoly::from_terms(target, std::move(terms));
}

RatFunc remap(const RatFunc& r, const RingPtr& target, const std::vector<std::pair<std::size_t, std::uint32_t>>& map) {
    if (r.is_zero()) return RatFunc(target);
    return RatFunc(remap(r.num(), target, map), remap(r.den(), target, map));
}

// Reduces v against an echelon basis; zero iff v is in the span.
std::vector<RatFunc> reduce(std::vector<RatFunc> v, const Matrix<RatFunc>& rows, std::size_t cols) {
    for (const auto& row : rows) {
        std::size_t piv = 0;
        while (piv < cols && row[piv].is_zero()) ++piv;
        if (piv == cols || v[piv].is_zero()) continue;
        RatFunc f = v[piv];
        for (std::size_t j = piv; j < cols; ++j) {
            if (!row[j].is_zero()) v[j] = v[j] - f * row[j];
        }
    }
    return v;
}

bool is_zero_vector(const std::vector<RatFunc>& v) {
    return std::all_of(v.begin(), v.end(), [](const RatFunc& r) { return r.is_zero(); });
}

Matrix<RatFunc> echelon(Matrix<RatFunc> rows, std::size_t cols) { return rref(std::move(rows), cols).rows; }

bool uses_only(const RatFunc& h, const std::vector<std::string>& vars) {
    for (const auto* p : {&h.num(), &h.den()}) {
        for (auto v : p->variables_used()) {
            if (std::find(vars.begin(), vars.end(), h.ring()->vars[v]) == vars.end()) return false;
        }
    }
    return true;
}

}  // namespace

AmbientContext::AmbientContext(PrimeField field, std::vector<std::string> vars, unsigned e)
    : field_(field), e_(e), q_(field.characteristic() == 0 ? 1 : power(field.characteristic(), e)) {
    if (field.characteristic() == 0 && e != 0) fail(ErrorCode::CharMismatch, "p-power contexts need positive characteristic");
    ring_ = make_ring(field, vars);
    base_ = make_ring(field, std::move(vars));
    size_ = 1;
    for (std::size_t i = 0; i < ring_->arity(); ++i) {
        size_ *= q_;
        if (size_ > 4096) fail(ErrorCode::InvalidArgument, "ambient context too large");
    }
}

std::vector<RatFunc> AmbientContext::decompose(const RatFunc& h) const {
    RatFunc x = h.in_ring(ring_);
    if (q_ == 1) return {x.in_ring(base_)};
    std::vector<RatFunc> parts = split_by_power(x, q_);
    for (auto& c : parts) c = c.in_ring(base_);
    return parts;
}

RatFunc AmbientContext::lift(const RatFunc& b) const {
    std::vector<std::pair<std::size_t, std::uint32_t>> map;
    for (std::size_t v = 0; v < base_->arity(); ++v) map.push_back({v, static_cast<std::uint32_t>(q_)});
    return remap(b, ring_, map);
}

RatFunc AmbientContext::compose(const std::vector<RatFunc>& coords) const {
    RatFunc acc(ring_);
    const std::size_t n = ring_->arity();
    for (std::size_t idx = 0; idx < coords.size(); ++idx) {
        if (coords[idx].is_zero()) continue;
        Exponents e(n, 0);
        std::size_t rest = idx;
        for (std::size_t v = 0; v < n; ++v) {
            e[v] = static_cast<std::uint32_t>(rest % q_);
            rest /= q_;
        }
        acc = acc + lift(coords[idx]) * RatFunc(MultiPoly::monomial(ring_, e, field_.one()));
    }
    return acc;
}

std::string AmbientContext::monomial(std::size_t index) const {
    const std::size_t n = ring_->arity();
    Exponents e(n, 0);
    for (std::size_t v = 0; v < n; ++v) {
        e[v] = static_cast<std::uint32_t>(index % q_);
        index /= q_;
    }
    return MultiPoly::monomial(ring_, e, field_.one()).to_string();
}

ContextPtr make_context(PrimeField field, std::vector<std::string> vars, unsigned e) {
    return std::make_shared<const AmbientContext>(field, std::move(vars), e);
}

SubfieldBasis::SubfieldBasis(ContextPtr ctx, Matrix<RatFunc> rows) : ctx_(std::move(ctx)), rows_(std::move(rows)) {}

std::vector<RatFunc> SubfieldBasis::elements() const {
    std::vector<RatFunc> out;
    for (const auto& r : rows_) out.push_back(ctx_->compose(r));
    return out;
}

bool operator==(const SubfieldBasis& a, const SubfieldBasis& b) {
    if (a.ctx_.get() != b.ctx_.get() && !(a.ctx_->vars() == b.ctx_->vars() && a.ctx_->q() == b.ctx_->q())) return false;
    if (a.rows_.size() != b.rows_.size()) return false;
    for (std::size_t i = 0; i < a.rows_.size(); ++i) {
        for (std::size_t j = 0; j < a.rows_[i].size(); ++j) {
            if (!(a.rows_[i][j] == b.rows_[i][j].in_ring(a.rows_[i][j].ring()))) return false;
        }
    }
    return true;
}

SubfieldBasis extend(const SubfieldBasis& b, const std::vector<RatFunc>& gens) {
    const ContextPtr& ctx = b.context();
    const std::size_t n = ctx->size();
    Matrix<RatFunc> rows = b.rows();
    for (const auto& g0 : gens) {
        const RatFunc g = g0.in_ring(ctx->ring());
        if (g.is_zero()) continue;
        // Multiply only the rows added in the previous round; reduction
        // against the rows so far (pivots normalized to 1) keeps them independent.
        Matrix<RatFunc> frontier = rows;
        while (!frontier.empty()) {
            Matrix<RatFunc> added;
            for (const auto& r : frontier) {
                std::vector<RatFunc> v = reduce(ctx->decompose(ctx->compose(r) * g), rows, n);
                std::size_t piv = 0;
                while (piv < n && v[piv].is_zero()) ++piv;
                if (piv == n) continue;
                const RatFunc inv = v[piv].inverse();
                for (std::size_t j = piv; j < n; ++j) {
                    if (!v[j].is_zero()) v[j] = v[j] * inv;
                }
                rows.push_back(v);
                added.push_back(std::move(v));
            }
            frontier = std::move(added);
        }
    }
    rows = echelon(std::move(rows), n);
    SubfieldBasis out(ctx, std::move(rows));
    if (n % out.dim() != 0) fail(ErrorCode::InternalInconsistency, "subfield dimension does not divide the ambient degree");
    return out;
}

SubfieldBasis subalgebra_closure(const ContextPtr& ctx, const std::vector<RatFunc>& gens) {
    Matrix<RatFunc> one{ctx->decompose(RatFunc::from_int(ctx->ring(), 1))};
    return extend(SubfieldBasis(ctx, echelon(std::move(one), ctx->size())), gens);
}

SubfieldBasis full_field(const ContextPtr& ctx) {
    const RatFunc zero(ctx->base_ring());
    Matrix<RatFunc> rows(ctx->size(), std::vector<RatFunc>(ctx->size(), zero));
    for (std::size_t i = 0; i < ctx->size(); ++i) rows[i][i] = RatFunc::from_int(ctx->base_ring(), 1);
    return SubfieldBasis(ctx, std::move(rows));
}

bool member(const RatFunc& elem, const SubfieldBasis& b) {
    const ContextPtr& ctx = b.context();
    if (!uses_only(elem, ctx->vars())) return false;
    return is_zero_vector(reduce(ctx->decompose(elem), b.rows(), ctx->size()));
}

bool contains(const SubfieldBasis& large, const SubfieldBasis& small) {
    const std::size_t n = large.context()->size();
    if (small.context()->size() != n || small.context()->vars() != large.context()->vars()) {
        fail(ErrorCode::ContextMismatch, "subfields live in different contexts");
    }
    for (const auto& r : small.rows()) {
        if (!is_zero_vector(reduce(r, large.rows(), n))) return false;
    }
    return true;
}

SubfieldBasis intersect(const SubfieldBasis& a, const SubfieldBasis& b) {
    const ContextPtr& ctx = a.context();
    if (b.context()->size() != ctx->size() || b.context()->vars() != ctx->vars()) {
        fail(ErrorCode::ContextMismatch, "subfields live in different contexts");
    }
    const std::size_t n = ctx->size();
    const std::size_t da = a.dim();
    const std::size_t db = b.dim();
    const RatFunc zero(ctx->base_ring());
    const RatFunc one = RatFunc::from_int(ctx->base_ring(), 1);
    Matrix<RatFunc> m(n, std::vector<RatFunc>(da + db, zero));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < da; ++j) m[i][j] = a.rows()[j][i];
        for (std::size_t j = 0; j < db; ++j) m[i][da + j] = -b.rows()[j][i];
    }
    Matrix<RatFunc> rows;
    for (const auto& v : nullspace(m, da + db, zero, one)) {
        std::vector<RatFunc> x(n, zero);
        for (std::size_t j = 0; j < da; ++j) {
            if (v[j].is_zero()) continue;
            for (std::size_t i = 0; i < n; ++i) {
                if (!a.rows()[j][i].is_zero()) x[i] = x[i] + v[j] * a.rows()[j][i];
            }
        }
        rows.push_back(std::move(x));
    }
    return SubfieldBasis(ctx, echelon(std::move(rows), n));
}

std::uint64_t relative_degree(const SubfieldBasis& small, const SubfieldBasis& large) {
    if (!contains(large, small)) fail(ErrorCode::NotASubfield, "the smaller field is not contained in the larger one");
    if (large.dim() % small.dim() != 0) fail(ErrorCode::InternalInconsistency, "relative degree is not an integer");
    return large.dim() / small.dim();
}

// ---------------------------------------------------------------------------
// Towers with ambient images.

AmbientShape ambient_shape(const FieldTower& t) {
    if (!t.ambient()) fail(ErrorCode::AmbientUnavailable, "the field has no ambient form");
    const RingPtr& amb = *t.ambient();
    const std::uint64_t p = t.characteristic();
    AmbientShape shape;
    for (const auto& s : t.steps()) {
        if (s.kind != Step::Kind::Transcendental) continue;
        const RatFunc& img = *s.image;
        const MultiPoly& num = img.num();
        bool ok = img.is_polynomial() && num.size() == 1 && num.leading_coef().is_one();
        std::size_t var = 0;
        std::uint32_t d = 0;
        if (ok) {
            const auto used = num.variables_used();
            ok = used.size() == 1;
            if (ok) {
                var = used[0];
                d = num.leading().exp[var];
            }
        }
        unsigned e = 0;
        if (ok) {
            std::uint32_t r = d;
            while (p != 0 && r % p == 0) {
                r /= static_cast<std::uint32_t>(p);
                ++e;
            }
            ok = r == 1;
        }
        const std::string& name = amb->vars[var];
        if (!ok || std::find(shape.vars.begin(), shape.vars.end(), name) != shape.vars.end()) {
            fail(ErrorCode::AmbientUnavailable,
                 "transcendental generator " + img.to_string() + " is not a p-power of a fresh ambient variable");
        }
        shape.vars.push_back(name);
        shape.var_exponent.push_back(e);
        shape.step_vars.push_back(name);
        shape.exponent = std::max(shape.exponent, e);
    }
    for (const auto& s : t.steps()) {
        if (s.kind == Step::Kind::Algebraic && !uses_only(*s.image, shape.vars)) {
            fail(ErrorCode::AmbientUnavailable, "algebraic generator " + s.name + " involves variables outside the field");
        }
    }
    // Keep the ambient order.
    AmbientShape sorted = shape;
    sorted.vars.clear();
    sorted.var_exponent.clear();
    for (const auto& v : amb->vars) {
        auto it = std::find(shape.vars.begin(), shape.vars.end(), v);
        if (it == shape.vars.end()) continue;
        sorted.vars.push_back(v);
        sorted.var_exponent.push_back(shape.var_exponent[static_cast<std::size_t>(it - shape.vars.begin())]);
    }
    return sorted;
}

std::vector<RatFunc> ambient_generators(const FieldTower& t, std::size_t steps) {
    std::vector<RatFunc> out;
    for (std::size_t i = 0; i < steps; ++i) out.push_back(*t.steps()[i].image);
    return out;
}

ContextPtr context_for(const std::vector<const FieldTower*>& towers, unsigned min_e) {
    if (towers.empty()) fail(ErrorCode::InvalidArgument, "no fields given");
    const FieldTower& first = *towers.front();
    if (!first.ambient()) fail(ErrorCode::AmbientUnavailable, "the field has no ambient form");
    const RingPtr& amb = *first.ambient();
    std::vector<bool> used(amb->arity(), false);
    unsigned e = min_e;
    for (const auto* t : towers) {
        if (!t->ambient() || (*t->ambient())->vars != amb->vars) {
            fail(ErrorCode::AmbientUnavailable, "fields do not share an ambient form");
        }
        AmbientShape s = ambient_shape(*t);
        for (const auto& v : s.vars) used[*amb->index_of(v)] = true;
        e = std::max(e, s.exponent);
    }
    std::vector<std::string> vars;
    for (std::size_t i = 0; i < amb->arity(); ++i) {
        if (used[i]) vars.push_back(amb->vars[i]);
    }
    if (first.characteristic() == 0) e = 0;
    return make_context(first.prime_field(), std::move(vars), e);
}

SubfieldBasis field_basis(const ContextPtr& ctx, const FieldTower& t, std::size_t steps) {
    return subalgebra_closure(ctx, ambient_generators(t, steps));
}

AlgElem tower_element(const FieldTower& t, const RatFunc& h0) {
    AmbientShape shape = ambient_shape(t);
    const RingPtr& amb = *t.ambient();
    RatFunc h = h0.in_ring(amb);
    if (!uses_only(h, shape.vars)) fail(ErrorCode::NotInField, h.to_string() + " involves variables outside the field");
    const std::uint64_t p = t.characteristic();
    const unsigned e = p == 0 ? 0 : shape.exponent;
    ContextPtr ctx = make_context(t.prime_field(), shape.vars, e);
    const RingPtr& ring = t.ring();
    const AlgebraPtr& alg = t.algebra();
    const std::size_t nv = shape.vars.size();

    // Per context variable: exponent e_i and the tower variable it feeds.
    std::vector<unsigned> ev(nv, 0);
    std::vector<std::size_t> tower_var(nv, 0);
    for (std::size_t i = 0; i < nv; ++i) {
        ev[i] = shape.var_exponent[i];
        for (const auto& s : t.steps()) {
            if (s.kind == Step::Kind::Transcendental && s.image->num().variables_used()[0] == *amb->index_of(shape.vars[i])) {
                tower_var[i] = *ring->index_of(s.name);
            }
        }
    }
    // F0 over B0 has basis prod x_i^{p^{e_i} g_i}, 0 <= g_i < p^{e - e_i}.
    std::vector<std::uint64_t> radix(nv);
    std::size_t f0_dim = 1;
    for (std::size_t i = 0; i < nv; ++i) {
        radix[i] = p == 0 ? 1 : power(p, e - ev[i]);
        f0_dim *= radix[i];
    }
    std::vector<RatFunc> gen_images;
    for (std::size_t g = 0; g < alg->num_gens(); ++g) {
        for (const auto& s : t.steps()) {
            if (s.kind == Step::Kind::Algebraic && s.gen_index == g) gen_images.push_back(s.image->in_ring(ctx->ring()));
        }
    }
    const std::size_t cols = f0_dim * alg->dim();
    const RatFunc zero(ctx->base_ring());
    Matrix<RatFunc> m(ctx->size(), std::vector<RatFunc>(cols, zero));
    std::vector<Exponents> gammas;
    for (std::size_t gi = 0; gi < f0_dim; ++gi) {
        Exponents ex(nv, 0);
        std::size_t rest = gi;
        for (std::size_t i = 0; i < nv; ++i) {
            ex[i] = static_cast<std::uint32_t>(rest % radix[i]);
            rest /= radix[i];
        }
        gammas.push_back(ex);
    }
    for (std::size_t b = 0; b < alg->dim(); ++b) {
        RatFunc mono = RatFunc::from_int(ctx->ring(), 1);
        auto be = alg->exponents(b);
        for (std::size_t g = 0; g < be.size(); ++g) {
            if (be[g]) mono = mono * gen_images[g].pow(be[g]);
        }
        for (std::size_t gi = 0; gi < f0_dim; ++gi) {
            Exponents ex(nv, 0);
            for (std::size_t i = 0; i < nv; ++i) {
                ex[i] = static_cast<std::uint32_t>(gammas[gi][i] * (p == 0 ? 1 : power(p, ev[i])));
            }
            RatFunc col = mono * RatFunc(MultiPoly::monomial(ctx->ring(), ex, t.prime_field().one()));
            auto v = ctx->decompose(col);
            for (std::size_t r = 0; r < v.size(); ++r) m[r][b * f0_dim + gi] = v[r];
        }
    }
    auto res = solve(m, cols, ctx->decompose(h), zero, RatFunc::from_int(ctx->base_ring(), 1));
    if (!res.solution) fail(ErrorCode::NotInField, h.to_string() + " is not in the field");
    // B0 variable x_i is x_i^{p^e} = t_i^{p^{e - e_i}}.
    std::vector<std::pair<std::size_t, std::uint32_t>> b0_map(nv), f0_map(nv);
    for (std::size_t i = 0; i < nv; ++i) {
        b0_map[i] = {tower_var[i], static_cast<std::uint32_t>(radix[i])};
        f0_map[i] = {tower_var[i], 1};
    }
    std::vector<RatFunc> coords(alg->dim(), RatFunc(ring));
    for (std::size_t b = 0; b < alg->dim(); ++b) {
        RatFunc acc(ring);
        for (std::size_t gi = 0; gi < f0_dim; ++gi) {
            const RatFunc& c = (*res.solution)[b * f0_dim + gi];
            if (c.is_zero()) continue;
            acc = acc + remap(c, ring, b0_map) * RatFunc(MultiPoly::monomial(ring, [&] {
                      Exponents ex(ring->arity(), 0);
                      for (std::size_t i = 0; i < nv; ++i) ex[tower_var[i]] += gammas[gi][i];
                      return ex;
                  }(), t.prime_field().one()));
        }
        coords[b] = acc;
    }
    AlgElem out = alg->element(std::move(coords));
    if (!(ambient_image(t, out) == h)) fail(ErrorCode::InternalInconsistency, "ambient conversion failed verification");
    return out;
}

InsepData insep_data(const FieldTower& t, const RatFunc& h0) {
    const std::uint64_t p = t.characteristic();
    if (p == 0) fail(ErrorCode::CharMismatch, "purely inseparable generators need positive characteristic");
    AmbientShape shape = ambient_shape(t);
    RatFunc h = h0.in_ring(*t.ambient());
    if (!uses_only(h, shape.vars)) {
        fail(ErrorCode::NotAlgebraic, h.to_string() + " involves variables that are transcendental over the field");
    }
    try {
        tower_element(t, h);
        fail(ErrorCode::InvalidArgument, h.to_string() + " already lies in the field");
    } catch (const Error& e) {
        if (e.code() != ErrorCode::NotInField) throw;
    }
    RatFunc power_h = h;
    for (unsigned m = 1; m <= shape.exponent + 1; ++m) {
        power_h = power_h.pow(p);
        try {
            return InsepData{m, tower_element(t, power_h)};
        } catch (const Error& e) {
            if (e.code() != ErrorCode::NotInField) throw;
        }
    }
    fail(ErrorCode::InternalInconsistency, "no p-power of " + h.to_string() + " lies in the field");
}

FieldTower adjoin_insep(const FieldTower& t, const RatFunc& h, const std::string& name) {
    InsepData d = insep_data(t, h);
    const AlgElem one = t.one();
    std::uint64_t deg = 1;
    for (unsigned i = 0; i < d.m; ++i) deg *= t.characteristic();
    AlgPoly f = AlgPoly::monomial(one, one, deg) - AlgPoly::constant(one, d.a);
    return t.adjoin_root(name, f, h.in_ring(*t.ambient()));
}

}  // namespace regtensor
