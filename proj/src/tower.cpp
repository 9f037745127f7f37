#include "tower.hpp"

#include <algorithm>

#include "error.hpp"
#include "factor.hpp"

namespace regtensor {

std::string_view shape_name(Shape s) {
    switch (s) {
        case Shape::SeparableOnly: return "SeparableOnly";
        case Shape::InsepOnly: return "InsepOnly";
        case Shape::SeparableThenInsep: return "SeparableThenInsep";
        case Shape::Unsplit: return "Unsplit";
    }
    return "Unknown";
}

FieldTower FieldTower::prime(PrimeField field) {
    FieldTower t;
    t.field_ = field;
    t.ring_ = make_ring(field, {});
    t.alg_ = TriAlgebra::base(t.ring_);
    return t;
}

FieldTower FieldTower::with_ambient(const std::vector<std::string>& vars) const {
    FieldTower t = *this;
    t.ambient_ = make_ring(field_, vars);
    return t;
}

std::optional<std::size_t> FieldTower::step_index(const std::string& name) const {
    for (std::size_t i = 0; i < steps_.size(); ++i) {
        if (steps_[i].name == name) return i;
    }
    return std::nullopt;
}

bool FieldTower::is_transcendental_var(const std::string& name) const { return ring_->index_of(name).has_value(); }

FieldTower FieldTower::adjoin_transcendental(const std::string& name, std::optional<RatFunc> image) const {
    if (step_index(name)) fail(ErrorCode::DuplicateName, "generator " + name + " already exists");
    FieldTower t = *this;
    std::vector<std::string> vars = ring_->vars;
    vars.push_back(name);
    t.ring_ = make_ring(field_, vars);
    t.alg_ = alg_->in_ring(t.ring_);
    for (auto& s : t.steps_) {
        if (s.cert) {
            for (auto& y : s.cert->obstruction) y = y.in_ring(t.ring_);
        }
    }
    Step s;
    s.kind = Step::Kind::Transcendental;
    s.name = name;
    s.image = std::move(image);
    if (ambient_ && !s.image) t.ambient_.reset();
    t.steps_.push_back(std::move(s));
    return t;
}

FieldTower FieldTower::adjoin_root(const std::string& name, const AlgPoly& minpoly, std::optional<RatFunc> image) const {
    if (step_index(name)) fail(ErrorCode::DuplicateName, "generator " + name + " already exists");
    if (minpoly.is_zero() || minpoly.deg() < 2) {
        fail(ErrorCode::InvalidArgument, "a minimal polynomial needs degree at least 2");
    }
    AlgPoly f = minpoly.monic();
    IrreducibilityResult r = certify_irreducible(*this, f);
    switch (r.status) {
        case IrreducibilityResult::Status::Irreducible:
            return adjoin_certified(name, f, *r.cert, std::move(image));
        case IrreducibilityResult::Status::Reducible:
            fail(ErrorCode::ReducibleMinPoly,
                 f.to_string() + " is reducible, with factor " + (r.factor ? r.factor->to_string() : "?"));
        case IrreducibilityResult::Status::Uncertifiable:
            break;
    }
    fail(ErrorCode::UncertifiableIrreducibility, "cannot certify irreducibility of " + f.to_string() + ": " + r.reason);
}

FieldTower FieldTower::adjoin_certified(const std::string& name, const AlgPoly& minpoly, IrreducibilityCert cert,
                                        std::optional<RatFunc> image) const {
    if (step_index(name) || ring_->index_of(name)) fail(ErrorCode::DuplicateName, "generator " + name + " already exists");
    if (minpoly.is_zero() || minpoly.deg() < 2) {
        fail(ErrorCode::InvalidArgument, "a minimal polynomial needs degree at least 2");
    }
    if (!minpoly.is_monic()) fail(ErrorCode::InvalidArgument, "minimal polynomial must be monic");
    std::vector<AlgElem> coeffs(minpoly.coeffs().begin(), minpoly.coeffs().end() - 1);
    for (auto& c : coeffs) c = alg_->embed(c);
    FieldTower t = *this;
    t.alg_ = alg_->adjoin(name, coeffs);
    Step s;
    s.kind = Step::Kind::Algebraic;
    s.name = name;
    s.image = std::move(image);
    s.gen_index = alg_->num_gens();
    s.cert = std::move(cert);
    if (ambient_ && !s.image) t.ambient_.reset();
    t.steps_.push_back(std::move(s));
    return t;
}

std::size_t FieldTower::algebraic_before(std::size_t n) const {
    std::size_t count = 0;
    for (std::size_t i = 0; i < n && i < steps_.size(); ++i) {
        if (steps_[i].kind == Step::Kind::Algebraic) ++count;
    }
    return count;
}

AlgebraPtr FieldTower::prefix_algebra(std::size_t n) const { return alg_->prefix(algebraic_before(n)); }

FieldTower FieldTower::prefix(std::size_t n) const {
    if (n > steps_.size()) fail(ErrorCode::InvalidArgument, "prefix longer than the tower");
    FieldTower t = prime(field_);
    if (ambient_) t = t.with_ambient((*ambient_)->vars);
    for (std::size_t i = 0; i < n; ++i) {
        const Step& s = steps_[i];
        if (s.kind == Step::Kind::Transcendental) {
            t = t.adjoin_transcendental(s.name, s.image);
        } else {
            // Coefficients only involve earlier transcendentals, which t has.
            AlgPoly f = minpoly(i);
            std::vector<AlgElem> c;
            for (const auto& x : f.coeffs()) {
                std::vector<RatFunc> mapped;
                for (const auto& r : x.coords()) mapped.push_back(r.in_ring(t.ring_));
                c.push_back(AlgElem(t.alg_->prefix(s.gen_index), std::move(mapped)));
            }
            IrreducibilityCert cert = *s.cert;
            for (auto& y : cert.obstruction) y = y.in_ring(t.ring_);
            t = t.adjoin_certified(s.name, AlgPoly(t.alg_->one(), c), cert, s.image);
        }
    }
    return t;
}

bool FieldTower::has_prefix(const FieldTower& other) const {
    if (!(other.field_ == field_) || other.steps_.size() > steps_.size()) return false;
    for (std::size_t i = 0; i < other.steps_.size(); ++i) {
        const Step& a = steps_[i];
        const Step& b = other.steps_[i];
        if (a.kind != b.kind || a.name != b.name) return false;
        if (a.kind == Step::Kind::Algebraic && minpoly(i).to_string() != other.minpoly(i).to_string()) return false;
    }
    return true;
}

std::optional<std::uint64_t> FieldTower::degree(std::size_t over) const {
    std::uint64_t d = 1;
    for (std::size_t i = over; i < steps_.size(); ++i) {
        if (steps_[i].kind == Step::Kind::Transcendental) return std::nullopt;
        d *= alg_->degree(steps_[i].gen_index);
    }
    return d;
}

std::size_t FieldTower::td(std::size_t over) const {
    std::size_t n = 0;
    for (std::size_t i = over; i < steps_.size(); ++i) {
        if (steps_[i].kind == Step::Kind::Transcendental) ++n;
    }
    return n;
}

AlgElem FieldTower::generator(const std::string& name) const {
    auto idx = step_index(name);
    if (!idx) fail(ErrorCode::UnknownName, "unknown generator " + name);
    const Step& s = steps_[*idx];
    if (s.kind == Step::Kind::Transcendental) {
        return alg_->scalar(RatFunc::variable(ring_, *ring_->index_of(name)));
    }
    return alg_->gen(s.gen_index);
}

AlgPoly FieldTower::minpoly(std::size_t step) const {
    const Step& s = steps_.at(step);
    if (s.kind != Step::Kind::Algebraic) fail(ErrorCode::InvalidArgument, "transcendental steps have no minimal polynomial");
    AlgebraPtr p = alg_->prefix(s.gen_index);
    std::vector<AlgElem> c;
    for (const auto& x : alg_->relation(s.gen_index)) c.push_back(AlgElem(p, x.coords()));
    c.push_back(p->one());
    return AlgPoly(p->one(), std::move(c));
}

AlgPoly FieldTower::minpoly_of_element(const AlgElem& elem, std::size_t over) const {
    if (td(over) > 0) fail(ErrorCode::InfiniteDegree, "the tower is not finite over the requested subfield");
    AlgebraPtr p = prefix_algebra(over);
    const std::size_t s = p->dim();
    const std::size_t nb = alg_->dim() / s;
    auto blocks = [&](const AlgElem& e) {
        std::vector<AlgElem> out;
        out.reserve(nb);
        const auto& c = e.coords();
        for (std::size_t k = 0; k < nb; ++k) {
            out.push_back(AlgElem(p, std::vector<RatFunc>(c.begin() + static_cast<std::ptrdiff_t>(k * s),
                                                          c.begin() + static_cast<std::ptrdiff_t>((k + 1) * s))));
        }
        return out;
    };
    AlgElem e = alg_->embed(elem);
    std::vector<std::vector<AlgElem>> powers;
    AlgElem cur = alg_->one();
    const AlgElem pz = p->zero();
    const AlgElem po = p->one();
    for (std::size_t n = 0; n <= nb; ++n) {
        auto v = blocks(cur);
        if (n > 0) {
            Matrix<AlgElem> m(nb, std::vector<AlgElem>(n, pz));
            for (std::size_t i = 0; i < nb; ++i) {
                for (std::size_t j = 0; j < n; ++j) m[i][j] = powers[j][i];
            }
            auto res = solve(m, n, v, pz, po);
            if (res.solution) {
                std::vector<AlgElem> coeffs;
                for (const auto& c : *res.solution) coeffs.push_back(pz - c);
                coeffs.push_back(po);
                return AlgPoly(po, std::move(coeffs));
            }
        }
        powers.push_back(std::move(v));
        cur = cur * e;
    }
    fail(ErrorCode::InternalInconsistency, "powers of an element failed to become dependent");
}

namespace {

bool is_power_of(std::uint64_t d, std::uint64_t p, unsigned& m) {
    if (p < 2 || d < p) return false;
    m = 0;
    while (d % p == 0) {
        d /= p;
        ++m;
    }
    return d == 1;
}

}  // namespace

SeparabilityProfile FieldTower::classify(std::size_t over) const {
    SeparabilityProfile prof;
    const std::uint64_t p = characteristic();
    bool seen_algebraic = false;
    bool seen_insep = false;
    bool seen_separable = false;
    std::vector<std::size_t> suffix_vars;
    std::vector<std::size_t> separable_gens;
    auto unsplit = [&](std::size_t i, std::string why) {
        prof.shape = Shape::Unsplit;
        prof.offending_step = i;
        prof.reason = std::move(why);
        return prof;
    };
    for (std::size_t i = over; i < steps_.size(); ++i) {
        const Step& s = steps_[i];
        if (s.kind == Step::Kind::Transcendental) {
            if (seen_algebraic) return unsplit(i, "transcendental step " + s.name + " follows an algebraic step");
            suffix_vars.push_back(*ring_->index_of(s.name));
            ++prof.transcendentals;
            seen_separable = true;
            continue;
        }
        seen_algebraic = true;
        const auto& rel = alg_->relation(s.gen_index);
        const std::size_t d = rel.size();
        bool separable = p == 0 || d % p != 0;
        for (std::size_t j = 1; j < d && !separable; ++j) {
            if (j % p != 0 && !rel[j].is_zero()) separable = true;
        }
        if (separable) {
            if (seen_insep) return unsplit(i, "separable step " + s.name + " follows a purely inseparable step");
            prof.separable_degree *= d;
            separable_gens.push_back(s.gen_index);
            seen_separable = true;
            continue;
        }
        unsigned m = 0;
        bool binomial = is_power_of(d, p, m) && !rel[0].is_zero();
        for (std::size_t j = 1; j < d && binomial; ++j) {
            if (!rel[j].is_zero()) binomial = false;
        }
        if (!binomial) return unsplit(i, "inseparable step " + s.name + " is not a binomial X^(p^m) - a");
        AlgElem a = -rel[0];
        AlgebraPtr below = alg_->prefix(s.gen_index);
        const auto& coords = a.coords();
        for (std::size_t idx = 0; idx < coords.size(); ++idx) {
            if (coords[idx].is_zero()) continue;
            auto ex = below->exponents(idx);
            for (auto g : separable_gens) {
                if (ex[g] != 0) return unsplit(i, "the p^m-th power of " + s.name + " involves separable generators");
            }
            for (auto v : suffix_vars) {
                if (coords[idx].num().involves(v) || coords[idx].den().involves(v)) {
                    return unsplit(i, "the p^m-th power of " + s.name + " involves transcendental generators");
                }
            }
        }
        seen_insep = true;
        prof.insep_exponent += m;
        prof.insep.push_back(InsepGenerator{i, s.name, m, a});
    }
    if (!seen_insep) {
        prof.shape = Shape::SeparableOnly;
    } else if (!seen_separable) {
        prof.shape = Shape::InsepOnly;
    } else {
        prof.shape = Shape::SeparableThenInsep;
    }
    return prof;
}

std::string FieldTower::to_string() const {
    std::string s = field_.to_string();
    for (const auto& st : steps_) {
        if (st.kind == Step::Kind::Transcendental) {
            s += "(" + st.name + ")";
        } else {
            s += "[" + st.name + ": " + minpoly(static_cast<std::size_t>(&st - steps_.data())).to_string() + "]";
        }
    }
    return s;
}

namespace {

RatFunc eval_poly(const MultiPoly& f, const std::vector<RatFunc>& values, const RingPtr& target) {
    RatFunc acc(target);
    for (const auto& t : f.terms()) {
        RatFunc term = RatFunc::constant(target, t.coef);
        for (std::size_t v = 0; v < t.exp.size(); ++v) {
            if (t.exp[v]) term = term * values[v].pow(t.exp[v]);
        }
        acc = acc + term;
    }
    return acc;
}

}  // namespace

RatFunc ambient_image(const FieldTower& tower, const AlgElem& e) {
    if (!tower.ambient()) fail(ErrorCode::AmbientUnavailable, "tower has no ambient form");
    const RingPtr& amb = *tower.ambient();
    const RingPtr& ring = tower.ring();
    std::vector<RatFunc> var_images;
    for (const auto& name : ring->vars) {
        const Step& s = tower.steps()[*tower.step_index(name)];
        var_images.push_back(*s.image);
    }
    const AlgebraPtr& alg = e.algebra();
    std::vector<RatFunc> gen_images;
    for (std::size_t g = 0; g < alg->num_gens(); ++g) {
        for (const auto& s : tower.steps()) {
            if (s.kind == Step::Kind::Algebraic && s.gen_index == g) gen_images.push_back(*s.image);
        }
    }
    RatFunc acc(amb);
    const auto& c = e.coords();
    for (std::size_t idx = 0; idx < c.size(); ++idx) {
        if (c[idx].is_zero()) continue;
        RatFunc coef = eval_poly(c[idx].num(), var_images, amb) / eval_poly(c[idx].den(), var_images, amb);
        auto ex = alg->exponents(idx);
        for (std::size_t g = 0; g < ex.size(); ++g) {
            if (ex[g]) coef = coef * gen_images[g].pow(ex[g]);
        }
        acc = acc + coef;
    }
    return acc;
}

std::string render_element(const FieldTower& tower, const AlgElem& e) {
    if (tower.ambient()) return ambient_image(tower, e).to_string();
    return e.to_string();
}

}  // namespace regtensor
