#include "algebra.hpp"

#include "error.hpp"
#include "unipoly.hpp"

namespace regtensor {

namespace {

bool all_zero(const std::vector<RatFunc>& v) {
    for (const auto& x : v) {
        if (!x.is_zero()) return false;
    }
    return true;
}

void check_same(const AlgElem& a, const AlgElem& b) {
    if (a.algebra() == b.algebra()) return;
    if (a.algebra()->dim() != b.algebra()->dim() || !same_ring(a.algebra()->ring(), b.algebra()->ring())) {
        fail(ErrorCode::ContextMismatch, "elements of different algebras");
    }
}

}  // namespace

AlgElem::AlgElem(AlgebraPtr alg, std::vector<RatFunc> coords) : alg_(std::move(alg)), c_(std::move(coords)) {
    if (c_.size() != alg_->dim()) fail(ErrorCode::ArityMismatch, "coordinate vector has the wrong length");
}

bool AlgElem::is_zero() const { return all_zero(c_); }

bool AlgElem::is_one() const {
    if (!c_[0].is_one()) return false;
    for (std::size_t i = 1; i < c_.size(); ++i) {
        if (!c_[i].is_zero()) return false;
    }
    return true;
}

bool AlgElem::in_base() const {
    for (std::size_t i = 1; i < c_.size(); ++i) {
        if (!c_[i].is_zero()) return false;
    }
    return true;
}

std::uint64_t AlgElem::characteristic() const { return alg_->ring()->field.characteristic(); }

AlgElem AlgElem::operator-() const {
    std::vector<RatFunc> out;
    out.reserve(c_.size());
    for (const auto& x : c_) out.push_back(-x);
    return AlgElem(alg_, std::move(out));
}

AlgElem operator+(const AlgElem& a, const AlgElem& b) {
    check_same(a, b);
    std::vector<RatFunc> out;
    out.reserve(a.c_.size());
    for (std::size_t i = 0; i < a.c_.size(); ++i) out.push_back(a.c_[i] + b.c_[i]);
    return AlgElem(a.alg_, std::move(out));
}

AlgElem operator-(const AlgElem& a, const AlgElem& b) {
    check_same(a, b);
    std::vector<RatFunc> out;
    out.reserve(a.c_.size());
    for (std::size_t i = 0; i < a.c_.size(); ++i) out.push_back(a.c_[i] - b.c_[i]);
    return AlgElem(a.alg_, std::move(out));
}

AlgElem operator*(const AlgElem& a, const AlgElem& b) {
    check_same(a, b);
    return AlgElem(a.alg_, a.alg_->mul(a.c_, b.c_));
}

AlgElem AlgElem::scaled(const RatFunc& s) const {
    std::vector<RatFunc> out;
    out.reserve(c_.size());
    for (const auto& x : c_) out.push_back(x * s);
    return AlgElem(alg_, std::move(out));
}

std::optional<AlgElem> AlgElem::try_inverse() const {
    if (is_zero()) return std::nullopt;
    if (in_base()) return alg_->scalar(c_[0].inverse());
    // Over a field prefix, invert through the top relation with an extended
    // gcd; zero divisors on the way send us to the linear system instead.
    try {
        if (auto inv = alg_->tower_inverse(c_)) return AlgElem(alg_, std::move(*inv));
        return std::nullopt;
    } catch (const Error& e) {
        if (e.code() != ErrorCode::DivisionByZero) throw;
    }
    const RingPtr& ring = alg_->ring();
    RatFunc zero(ring);
    RatFunc one = RatFunc::from_int(ring, 1);
    std::vector<RatFunc> rhs(alg_->dim(), zero);
    rhs[0] = one;
    auto res = solve(alg_->mult_matrix(*this), alg_->dim(), rhs, zero, one);
    if (!res.solution) return std::nullopt;
    return AlgElem(alg_, std::move(*res.solution));
}

AlgElem AlgElem::inverse() const {
    auto inv = try_inverse();
    if (!inv) fail(ErrorCode::DivisionByZero, "element " + to_string() + " is not invertible");
    return *inv;
}

AlgElem AlgElem::pow(std::uint64_t e) const {
    AlgElem result = alg_->one();
    AlgElem base = *this;
    while (e > 0) {
        if (e & 1) result = result * base;
        e >>= 1;
        if (e > 0) base = base * base;
    }
    return result;
}

std::string AlgElem::to_string() const {
    std::string out;
    for (std::size_t i = c_.size(); i-- > 0;) {
        if (c_[i].is_zero()) continue;
        std::string cs = c_[i].to_string();
        std::string mono = alg_->monomial_string(i);
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

bool operator==(const AlgElem& a, const AlgElem& b) {
    if (a.c_.size() != b.c_.size()) return false;
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
        if (!(a.c_[i] == b.c_[i])) return false;
    }
    return true;
}

AlgebraPtr TriAlgebra::base(RingPtr ring) {
    std::shared_ptr<TriAlgebra> a(new TriAlgebra());
    a->ring_ = std::move(ring);
    a->dim_ = 1;
    return a;
}

AlgebraPtr TriAlgebra::adjoin(const std::string& name, const std::vector<AlgElem>& coeffs) const {
    if (coeffs.empty()) fail(ErrorCode::InvalidArgument, "relation must have degree at least 1");
    std::shared_ptr<TriAlgebra> a(new TriAlgebra());
    a->ring_ = ring_;
    a->parent_ = shared_from_this();
    a->name_ = name;
    a->dim_ = dim_ * coeffs.size();
    for (const auto& c : coeffs) {
        if (c.coords().size() != dim_) fail(ErrorCode::ArityMismatch, "relation coefficient lives in the wrong algebra");
        // Rebind to this node so that coefficient arithmetic uses it.
        a->coeffs_.push_back(AlgElem(shared_from_this(), c.coords()));
    }
    a->chain_ = chain_;
    a->chain_.push_back(a.get());
    return a;
}

const TriAlgebra& TriAlgebra::node(std::size_t i) const {
    if (i >= chain_.size()) fail(ErrorCode::InvalidArgument, "generator index out of range");
    return *chain_[i];
}

AlgebraPtr TriAlgebra::prefix(std::size_t n) const {
    if (n > chain_.size()) fail(ErrorCode::InvalidArgument, "prefix longer than the algebra");
    AlgebraPtr cur = shared_from_this();
    for (std::size_t k = chain_.size(); k > n; --k) cur = cur->parent_;
    return cur;
}

AlgebraPtr TriAlgebra::in_ring(const RingPtr& target) const {
    if (ring_ == target) return shared_from_this();
    AlgebraPtr out = base(target);
    for (std::size_t i = 0; i < chain_.size(); ++i) {
        std::vector<AlgElem> coeffs;
        for (const auto& c : relation(i)) {
            std::vector<RatFunc> mapped;
            for (const auto& x : c.coords()) mapped.push_back(x.in_ring(target));
            coeffs.push_back(AlgElem(out, std::move(mapped)));
        }
        out = out->adjoin(gen_name(i), coeffs);
    }
    return out;
}

AlgElem TriAlgebra::zero() const { return AlgElem(shared_from_this(), std::vector<RatFunc>(dim_, RatFunc(ring_))); }

AlgElem TriAlgebra::one() const { return scalar(RatFunc::from_int(ring_, 1)); }

AlgElem TriAlgebra::from_int(long long c) const { return scalar(RatFunc::from_int(ring_, c)); }

AlgElem TriAlgebra::scalar(const RatFunc& c) const {
    std::vector<RatFunc> v(dim_, RatFunc(ring_));
    v[0] = c;
    return AlgElem(shared_from_this(), std::move(v));
}

AlgElem TriAlgebra::basis(std::size_t index) const {
    std::vector<RatFunc> v(dim_, RatFunc(ring_));
    v.at(index) = RatFunc::from_int(ring_, 1);
    return AlgElem(shared_from_this(), std::move(v));
}

AlgElem TriAlgebra::gen(std::size_t i) const {
    const TriAlgebra& n = node(i);
    if (n.coeffs_.size() == 1) {
        // Degree-one relation X + c = 0.
        return embed(-n.coeffs_[0]);
    }
    return basis(stride(i));
}

AlgElem TriAlgebra::element(std::vector<RatFunc> coords) const { return AlgElem(shared_from_this(), std::move(coords)); }

AlgElem TriAlgebra::embed(const AlgElem& e) const {
    if (e.coords().size() > dim_) fail(ErrorCode::ArityMismatch, "element does not come from a prefix");
    std::vector<RatFunc> v = e.coords();
    v.resize(dim_, RatFunc(ring_));
    return AlgElem(shared_from_this(), std::move(v));
}

AlgElem TriAlgebra::restrict_to(const AlgElem& e, std::size_t n) const {
    AlgebraPtr p = prefix(n);
    const auto& c = e.coords();
    for (std::size_t i = p->dim(); i < c.size(); ++i) {
        if (!c[i].is_zero()) fail(ErrorCode::NotInField, "element does not lie in the requested prefix");
    }
    return AlgElem(p, std::vector<RatFunc>(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(p->dim())));
}

std::vector<std::uint32_t> TriAlgebra::exponents(std::size_t index) const {
    std::vector<std::uint32_t> e(chain_.size());
    for (std::size_t i = 0; i < chain_.size(); ++i) {
        std::size_t d = degree(i);
        e[i] = static_cast<std::uint32_t>(index % d);
        index /= d;
    }
    return e;
}

std::size_t TriAlgebra::index_of(const std::vector<std::uint32_t>& exps) const {
    std::size_t idx = 0;
    for (std::size_t i = chain_.size(); i-- > 0;) idx = idx * degree(i) + exps[i];
    return idx;
}

std::string TriAlgebra::monomial_string(std::size_t index) const {
    auto e = exponents(index);
    std::string s;
    for (std::size_t i = 0; i < e.size(); ++i) {
        if (e[i] == 0) continue;
        if (!s.empty()) s += "*";
        s += gen_name(i);
        if (e[i] > 1) s += "^" + std::to_string(e[i]);
    }
    return s;
}

std::optional<std::vector<RatFunc>> TriAlgebra::tower_inverse(const std::vector<RatFunc>& a) const {
    if (!parent_) {
        if (a[0].is_zero()) return std::nullopt;
        return std::vector<RatFunc>{a[0].inverse()};
    }
    const std::size_t d = coeffs_.size();
    const std::size_t s = parent_->dim_;
    std::vector<AlgElem> ec, fc;
    for (std::size_t k = 0; k < d; ++k) {
        ec.push_back(AlgElem(parent_, std::vector<RatFunc>(a.begin() + static_cast<std::ptrdiff_t>(k * s),
                                                           a.begin() + static_cast<std::ptrdiff_t>((k + 1) * s))));
    }
    for (const auto& c : coeffs_) fc.push_back(c);
    fc.push_back(parent_->one());
    UniPoly<AlgElem> e(parent_->one(), std::move(ec));
    if (e.is_zero()) return std::nullopt;
    UniPoly<AlgElem> f(parent_->one(), std::move(fc));
    auto [g, u, v] = ext_gcd(e, f);
    if (g.deg() != 0) return std::nullopt;
    std::vector<RatFunc> out;
    out.reserve(dim_);
    for (std::size_t k = 0; k < d; ++k) {
        const auto& c = u.coeff(k).coords();
        out.insert(out.end(), c.begin(), c.end());
    }
    return out;
}

std::vector<RatFunc> TriAlgebra::mul(const std::vector<RatFunc>& a, const std::vector<RatFunc>& b) const {
    if (!parent_) return {a[0] * b[0]};
    const std::size_t d = coeffs_.size();
    const std::size_t s = parent_->dim_;
    auto block = [&](const std::vector<RatFunc>& v, std::size_t k) {
        return std::vector<RatFunc>(v.begin() + static_cast<std::ptrdiff_t>(k * s),
                                    v.begin() + static_cast<std::ptrdiff_t>((k + 1) * s));
    };
    std::vector<std::vector<RatFunc>> ab(d), bb(d);
    std::vector<bool> az(d), bz(d);
    for (std::size_t k = 0; k < d; ++k) {
        ab[k] = block(a, k);
        bb[k] = block(b, k);
        az[k] = all_zero(ab[k]);
        bz[k] = all_zero(bb[k]);
    }
    std::vector<std::vector<RatFunc>> prod(2 * d - 1, std::vector<RatFunc>(s, RatFunc(ring_)));
    std::vector<bool> pz(2 * d - 1, true);
    auto add_into = [&](std::size_t k, const std::vector<RatFunc>& v, bool subtract) {
        for (std::size_t j = 0; j < s; ++j) {
            if (v[j].is_zero()) continue;
            prod[k][j] = subtract ? prod[k][j] - v[j] : prod[k][j] + v[j];
        }
        pz[k] = false;
    };
    for (std::size_t i = 0; i < d; ++i) {
        if (az[i]) continue;
        for (std::size_t j = 0; j < d; ++j) {
            if (bz[j]) continue;
            add_into(i + j, parent_->mul(ab[i], bb[j]), false);
        }
    }
    for (std::size_t k = 2 * d - 1; k-- > d;) {
        if (pz[k] || all_zero(prod[k])) continue;
        for (std::size_t j = 0; j < d; ++j) {
            const auto& f = coeffs_[j].coords();
            if (all_zero(f)) continue;
            add_into(k - d + j, parent_->mul(prod[k], f), true);
        }
    }
    std::vector<RatFunc> out;
    out.reserve(dim_);
    for (std::size_t k = 0; k < d; ++k) out.insert(out.end(), prod[k].begin(), prod[k].end());
    return out;
}

Matrix<RatFunc> TriAlgebra::mult_matrix(const AlgElem& a) const {
    Matrix<RatFunc> m(dim_, std::vector<RatFunc>(dim_, RatFunc(ring_)));
    for (std::size_t j = 0; j < dim_; ++j) {
        auto col = mul(a.coords(), basis(j).coords());
        for (std::size_t i = 0; i < dim_; ++i) m[i][j] = col[i];
    }
    return m;
}

std::string TriAlgebra::signature() const {
    std::string s = ring_->field.to_string() + "[";
    for (std::size_t i = 0; i < ring_->vars.size(); ++i) s += (i ? "," : "") + ring_->vars[i];
    s += "]";
    for (std::size_t i = 0; i < chain_.size(); ++i) {
        s += ";" + gen_name(i) + ":";
        for (const auto& c : relation(i)) s += c.to_string() + "|";
    }
    return s;
}

}  // namespace regtensor
