#include "multipoly.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "error.hpp"
#include "modimage.hpp"

namespace regtensor {

std::optional<std::size_t> PolyRing::index_of(const std::string& name) const {
    for (std::size_t i = 0; i < vars.size(); ++i) {
        if (vars[i] == name) return i;
    }
    return std::nullopt;
}

RingPtr make_ring(PrimeField field, std::vector<std::string> vars) {
    return std::make_shared<const PolyRing>(PolyRing{field, std::move(vars)});
}

bool same_ring(const RingPtr& a, const RingPtr& b) {
    if (a == b) return true;
    return a->field == b->field && a->vars == b->vars;
}

bool grlex_less(const Exponents& a, const Exponents& b) {
    std::uint64_t da = 0, db = 0;
    for (auto e : a) da += e;
    for (auto e : b) db += e;
    if (da != db) return da < db;
    // Lexicographic with the first variable most significant.
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] != b[i]) return a[i] < b[i];
    }
    return false;
}

namespace {

struct GrlexGreater {
    bool operator()(const Exponents& a, const Exponents& b) const { return grlex_less(b, a); }
};

bool divides(const Exponents& small, const Exponents& big) {
    for (std::size_t i = 0; i < small.size(); ++i) {
        if (small[i] > big[i]) return false;
    }
    return true;
}

}  // namespace

MultiPoly MultiPoly::constant(RingPtr ring, const Scalar& c) {
    MultiPoly p(ring);
    if (!c.is_zero()) p.terms_.push_back({Exponents(ring->arity(), 0), c});
    return p;
}

MultiPoly MultiPoly::from_int(RingPtr ring, long long c) {
    Scalar s = ring->field.from_int(c);
    return constant(std::move(ring), s);
}

MultiPoly MultiPoly::variable(RingPtr ring, std::size_t index) {
    if (index >= ring->arity()) fail(ErrorCode::ArityMismatch, "variable index out of range");
    Exponents e(ring->arity(), 0);
    e[index] = 1;
    Scalar one = ring->field.one();
    return monomial(std::move(ring), std::move(e), one);
}

MultiPoly MultiPoly::monomial(RingPtr ring, Exponents exp, const Scalar& c) {
    if (exp.size() != ring->arity()) fail(ErrorCode::ArityMismatch, "exponent vector has wrong arity");
    MultiPoly p(ring);
    if (!c.is_zero()) p.terms_.push_back({std::move(exp), c});
    return p;
}

MultiPoly MultiPoly::from_terms(RingPtr ring, std::vector<Term> terms) {
    std::map<Exponents, Scalar, GrlexGreater> acc;
    for (auto& t : terms) {
        if (t.exp.size() != ring->arity()) fail(ErrorCode::ArityMismatch, "exponent vector has wrong arity");
        auto it = acc.find(t.exp);
        if (it == acc.end()) {
            acc.emplace(std::move(t.exp), std::move(t.coef));
        } else {
            it->second += t.coef;
        }
    }
    MultiPoly p(std::move(ring));
    p.terms_.reserve(acc.size());
    for (auto& [e, c] : acc) {
        if (!c.is_zero()) p.terms_.push_back({e, c});
    }
    return p;
}

MultiPoly MultiPoly::from_sorted(RingPtr ring, std::vector<Term> terms) {
    MultiPoly p(std::move(ring));
    p.terms_ = std::move(terms);
    return p;
}

bool MultiPoly::is_constant() const {
    if (terms_.empty()) return true;
    if (terms_.size() > 1) return false;
    return std::all_of(terms_[0].exp.begin(), terms_[0].exp.end(), [](auto e) { return e == 0; });
}

bool MultiPoly::is_one() const { return is_constant() && !is_zero() && terms_[0].coef.is_one(); }

Scalar MultiPoly::constant_value() const {
    if (!is_constant()) fail(ErrorCode::InvalidArgument, "polynomial is not constant");
    return terms_.empty() ? ring_->field.zero() : terms_[0].coef;
}

Scalar MultiPoly::constant_term() const {
    if (!terms_.empty()) {
        const auto& last = terms_.back();
        if (std::all_of(last.exp.begin(), last.exp.end(), [](auto e) { return e == 0; })) return last.coef;
    }
    return ring_->field.zero();
}

const MultiPoly::Term& MultiPoly::leading() const {
    if (terms_.empty()) fail(ErrorCode::InvalidArgument, "zero polynomial has no leading term");
    return terms_.front();
}

std::uint32_t MultiPoly::total_degree() const {
    std::uint32_t d = 0;
    for (const auto& t : terms_) {
        std::uint32_t s = 0;
        for (auto e : t.exp) s += e;
        d = std::max(d, s);
    }
    return d;
}

std::uint32_t MultiPoly::degree_in(std::size_t var) const {
    std::uint32_t d = 0;
    for (const auto& t : terms_) d = std::max(d, t.exp[var]);
    return d;
}

bool MultiPoly::involves(std::size_t var) const { return degree_in(var) > 0; }

std::vector<std::size_t> MultiPoly::variables_used() const {
    std::vector<std::size_t> out;
    for (std::size_t v = 0; v < ring_->arity(); ++v) {
        if (involves(v)) out.push_back(v);
    }
    return out;
}

void MultiPoly::check_ring(const MultiPoly& other) const {
    if (!same_ring(ring_, other.ring_)) fail(ErrorCode::ArityMismatch, "polynomials live in different rings");
}

MultiPoly MultiPoly::operator-() const {
    MultiPoly r(ring_);
    r.terms_ = terms_;
    for (auto& t : r.terms_) t.coef = -t.coef;
    return r;
}

namespace {

MultiPoly merge(const MultiPoly& a, const MultiPoly& b, bool subtract) {
    std::vector<MultiPoly::Term> out;
    out.reserve(a.size() + b.size());
    const auto& ta = a.terms();
    const auto& tb = b.terms();
    std::size_t i = 0, j = 0;
    while (i < ta.size() || j < tb.size()) {
        if (j == tb.size() || (i < ta.size() && grlex_less(tb[j].exp, ta[i].exp))) {
            out.push_back(ta[i++]);
        } else if (i == ta.size() || grlex_less(ta[i].exp, tb[j].exp)) {
            out.push_back({tb[j].exp, subtract ? -tb[j].coef : tb[j].coef});
            ++j;
        } else {
            Scalar c = subtract ? ta[i].coef - tb[j].coef : ta[i].coef + tb[j].coef;
            if (!c.is_zero()) out.push_back({ta[i].exp, c});
            ++i;
            ++j;
        }
    }
    return MultiPoly::from_sorted(a.ring(), std::move(out));
}

}  // namespace

MultiPoly operator+(const MultiPoly& a, const MultiPoly& b) {
    a.check_ring(b);
    if (b.is_zero()) return a;
    if (a.is_zero()) return b;
    return merge(a, b, false);
}

MultiPoly operator-(const MultiPoly& a, const MultiPoly& b) {
    a.check_ring(b);
    if (b.is_zero()) return a;
    return merge(a, b, true);
}

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
    a.check_ring(b);
    if (a.is_zero() || b.is_zero()) return MultiPoly(a.ring_);
    if (b.is_constant()) return a.scaled(b.terms_[0].coef);
    if (a.is_constant()) return b.scaled(a.terms_[0].coef);
    std::vector<MultiPoly::Term> out;
    out.reserve(a.size() * b.size());
    const std::size_t n = a.ring_->arity();
    for (const auto& ta : a.terms_) {
        for (const auto& tb : b.terms_) {
            Exponents e(n);
            for (std::size_t k = 0; k < n; ++k) e[k] = ta.exp[k] + tb.exp[k];
            out.push_back({std::move(e), ta.coef * tb.coef});
        }
    }
    return MultiPoly::from_terms(a.ring_, std::move(out));
}

MultiPoly MultiPoly::scaled(const Scalar& c) const {
    if (c.is_zero()) return MultiPoly(ring_);
    MultiPoly r(ring_);
    r.terms_ = terms_;
    for (auto& t : r.terms_) t.coef *= c;
    return r;
}

MultiPoly MultiPoly::times_monomial(const Exponents& exp) const {
    MultiPoly r(ring_);
    r.terms_ = terms_;
    for (auto& t : r.terms_) {
        for (std::size_t k = 0; k < exp.size(); ++k) t.exp[k] += exp[k];
    }
    return r;
}

MultiPoly MultiPoly::pow(std::uint64_t e) const {
    MultiPoly result = from_int(ring_, 1);
    MultiPoly base = *this;
    while (e > 0) {
        if (e & 1) result = result * base;
        e >>= 1;
        if (e > 0) base = base * base;
    }
    return result;
}

std::optional<MultiPoly> MultiPoly::try_div(const MultiPoly& g) const {
    check_ring(g);
    if (g.is_zero()) fail(ErrorCode::DivisionByZero, "polynomial division by zero");
    if (g.is_constant()) return scaled(g.terms_[0].coef.inverse());
    std::vector<Term> quotient;
    MultiPoly r = *this;
    const Term& lg = g.leading();
    const Scalar lg_inv = lg.coef.inverse();
    while (!r.is_zero()) {
        const Term& lr = r.leading();
        if (!divides(lg.exp, lr.exp)) return std::nullopt;
        Exponents e(lr.exp.size());
        for (std::size_t k = 0; k < e.size(); ++k) e[k] = lr.exp[k] - lg.exp[k];
        Scalar c = lr.coef * lg_inv;
        r = r - g.times_monomial(e).scaled(c);
        quotient.push_back({std::move(e), c});
    }
    return from_terms(ring_, std::move(quotient));
}

MultiPoly MultiPoly::exact_div(const MultiPoly& g) const {
    auto q = try_div(g);
    if (!q) fail(ErrorCode::InexactDivision, "(" + to_string() + ") is not divisible by (" + g.to_string() + ")");
    return *q;
}

std::vector<MultiPoly> MultiPoly::coefficients_in(std::size_t var) const {
    std::vector<std::vector<Term>> buckets(degree_in(var) + 1);
    for (const auto& t : terms_) {
        Term c = t;
        c.exp[var] = 0;
        buckets[t.exp[var]].push_back(std::move(c));
    }
    std::vector<MultiPoly> out;
    out.reserve(buckets.size());
    for (auto& b : buckets) out.push_back(from_terms(ring_, std::move(b)));
    return out;
}

MultiPoly MultiPoly::from_coefficients_in(RingPtr ring, std::size_t var, const std::vector<MultiPoly>& coeffs) {
    std::vector<Term> terms;
    for (std::size_t j = 0; j < coeffs.size(); ++j) {
        for (const auto& t : coeffs[j].terms()) {
            Term c = t;
            c.exp[var] += static_cast<std::uint32_t>(j);
            terms.push_back(std::move(c));
        }
    }
    return from_terms(std::move(ring), std::move(terms));
}

MultiPoly MultiPoly::derivative(std::size_t var) const {
    std::vector<Term> out;
    for (const auto& t : terms_) {
        if (t.exp[var] == 0) continue;
        Term d = t;
        d.coef = t.coef * ring_->field.from_int(t.exp[var]);
        d.exp[var] -= 1;
        if (!d.coef.is_zero()) out.push_back(std::move(d));
    }
    return from_terms(ring_, std::move(out));
}

MultiPoly MultiPoly::substitute(std::size_t var, const MultiPoly& value) const {
    check_ring(value);
    auto coeffs = coefficients_in(var);
    MultiPoly result(ring_);
    for (std::size_t j = coeffs.size(); j-- > 0;) {
        result = result * value + coeffs[j];
    }
    return result;
}

Scalar MultiPoly::evaluate(const std::vector<Scalar>& point) const {
    if (point.size() != ring_->arity()) fail(ErrorCode::ArityMismatch, "evaluation point has wrong arity");
    Scalar acc = ring_->field.zero();
    for (const auto& t : terms_) {
        Scalar v = t.coef;
        for (std::size_t k = 0; k < point.size(); ++k) {
            if (t.exp[k]) v *= point[k].pow(t.exp[k]);
        }
        acc += v;
    }
    return acc;
}

MultiPoly MultiPoly::monic() const {
    if (is_zero()) return *this;
    return scaled(leading_coef().inverse());
}

MultiPoly MultiPoly::in_ring(const RingPtr& target) const {
    if (same_ring(ring_, target)) {
        MultiPoly r(target);
        r.terms_ = terms_;
        return r;
    }
    if (!(target->field == ring_->field)) fail(ErrorCode::ModulusMismatch, "ring coefficient fields differ");
    std::vector<std::optional<std::size_t>> map(ring_->arity());
    for (std::size_t v = 0; v < ring_->arity(); ++v) map[v] = target->index_of(ring_->vars[v]);
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (const auto& t : terms_) {
        Exponents e(target->arity(), 0);
        for (std::size_t v = 0; v < t.exp.size(); ++v) {
            if (t.exp[v] == 0) continue;
            if (!map[v]) fail(ErrorCode::ArityMismatch, "variable " + ring_->vars[v] + " is missing in target ring");
            e[*map[v]] = t.exp[v];
        }
        out.push_back({std::move(e), t.coef});
    }
    return from_terms(target, std::move(out));
}

MultiPoly MultiPoly::map_exponents(const std::function<Exponents(const Exponents&)>& f) const {
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (const auto& t : terms_) out.push_back({f(t.exp), t.coef});
    return from_terms(ring_, std::move(out));
}

std::string format_monomial(const PolyRing& ring, const Exponents& exp) {
    std::string s;
    for (std::size_t v = 0; v < exp.size(); ++v) {
        if (exp[v] == 0) continue;
        if (!s.empty()) s += "*";
        s += ring.vars[v];
        if (exp[v] > 1) s += "^" + std::to_string(exp[v]);
    }
    return s;
}

std::string MultiPoly::to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (std::size_t i = 0; i < terms_.size(); ++i) {
        const auto& t = terms_[i];
        std::string mono = format_monomial(*ring_, t.exp);
        Scalar c = t.coef;
        bool negative = c.is_rational() && sgn(c.as_rational()) < 0;
        if (negative) c = -c;
        std::string coef = c.to_string();
        std::string body;
        if (mono.empty()) {
            body = coef;
        } else if (c.is_one()) {
            body = mono;
        } else {
            body = coef + "*" + mono;
        }
        if (i == 0) {
            out = negative ? "-" + body : body;
        } else {
            out += negative ? " - " : " + ";
            out += body;
        }
    }
    return out;
}

bool operator==(const MultiPoly& a, const MultiPoly& b) {
    if (!same_ring(a.ring_, b.ring_)) return false;
    if (a.terms_.size() != b.terms_.size()) return false;
    for (std::size_t i = 0; i < a.terms_.size(); ++i) {
        if (a.terms_[i].exp != b.terms_[i].exp || !(a.terms_[i].coef == b.terms_[i].coef)) return false;
    }
    return true;
}

namespace {

std::optional<std::size_t> last_variable(const MultiPoly& f, const MultiPoly& g) {
    for (std::size_t v = f.ring()->arity(); v-- > 0;) {
        if (f.involves(v) || g.involves(v)) return v;
    }
    return std::nullopt;
}

// lc(b)^(deg a - deg b + 1) * a mod b in the variable var.
MultiPoly pseudo_remainder(const MultiPoly& a, const MultiPoly& b, std::size_t var) {
    const std::uint32_t db = b.degree_in(var);
    const MultiPoly lb = b.coefficients_in(var).back();
    const std::uint32_t da = a.degree_in(var);
    std::uint32_t steps = da >= db ? da - db + 1 : 0;
    MultiPoly r = a;
    while (!r.is_zero() && r.degree_in(var) >= db) {
        const std::uint32_t dr = r.degree_in(var);
        MultiPoly lr = r.coefficients_in(var).back();
        Exponents shift(r.ring()->arity(), 0);
        shift[var] = dr - db;
        r = lb * r - (lr * b).times_monomial(shift);
        --steps;
    }
    for (; steps > 0 && !r.is_zero(); --steps) r = r * lb;
    return r;
}

MultiPoly primitive_part(const MultiPoly& f, std::size_t var) { return f.exact_div(content_in(f, var)); }

}  // namespace

MultiPoly content_in(const MultiPoly& f, std::size_t var) {
    MultiPoly c(f.ring());
    for (const auto& coeff : f.coefficients_in(var)) {
        if (coeff.is_zero()) continue;
        c = gcd(c, coeff);
        if (c.is_one()) break;
    }
    return c;
}

MultiPoly gcd(const MultiPoly& f, const MultiPoly& g) {
    if (!same_ring(f.ring(), g.ring())) fail(ErrorCode::ArityMismatch, "gcd of polynomials in different rings");
    if (f.is_zero()) return g.monic();
    if (g.is_zero()) return f.monic();
    if (f.is_constant() || g.is_constant()) return MultiPoly::from_int(f.ring(), 1);
    if (f.terms().size() == 1 || g.terms().size() == 1) {
        // A monomial's divisors are monomials: take the smallest exponents.
        Exponents e = f.terms().front().exp;
        for (const auto* p : {&f, &g}) {
            for (const auto& t : p->terms()) {
                for (std::size_t k = 0; k < e.size(); ++k) e[k] = std::min(e[k], t.exp[k]);
            }
        }
        return MultiPoly::monomial(f.ring(), std::move(e), f.ring()->field.one());
    }
    auto var = last_variable(f, g);
    if (!var) return MultiPoly::from_int(f.ring(), 1);
    const std::size_t v = *var;
    // A variable missing from one side only enters through the other's content.
    if (!f.involves(v)) return gcd(f, content_in(g, v));
    if (!g.involves(v)) return gcd(content_in(f, v), g);
    // Coprime images at a good point rule out factors involving v.
    if (coprime_in_variable(f, g, v)) return gcd(content_in(f, v), content_in(g, v));
    MultiPoly cf = content_in(f, v);
    MultiPoly cg = content_in(g, v);
    MultiPoly c = gcd(cf, cg);
    MultiPoly a = f.exact_div(cf);
    MultiPoly b = g.exact_div(cg);
    if (a.degree_in(v) < b.degree_in(v)) std::swap(a, b);
    // Subresultant remainder sequence: only exact divisions until the end.
    MultiPoly gg = MultiPoly::from_int(f.ring(), 1);
    MultiPoly h = gg;
    while (!b.is_zero()) {
        if (b.degree_in(v) == 0) {
            a = MultiPoly::from_int(f.ring(), 1);
            break;
        }
        const std::uint32_t delta = a.degree_in(v) - b.degree_in(v);
        MultiPoly r = pseudo_remainder(a, b, v);
        a = std::move(b);
        if (r.is_zero()) {
            b = std::move(r);
            break;
        }
        b = r.exact_div(gg * h.pow(delta));
        gg = a.coefficients_in(v).back();
        if (delta == 0) {
            // h stays.
        } else if (delta == 1) {
            h = gg;
        } else {
            h = gg.pow(delta).exact_div(h.pow(delta - 1));
        }
    }
    if (a.degree_in(v) > 0) a = primitive_part(a, v);
    return (c * a).monic();
}

}  // namespace regtensor
