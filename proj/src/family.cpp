#include "family.hpp"

#include "error.hpp"
#include "expr.hpp"
#include "insep.hpp"

namespace regtensor {

namespace {

struct Config {
    std::uint64_t p;
    std::vector<std::string> vars;
    std::vector<std::string> base_gens;
    std::vector<std::string> k_cands;
    std::vector<std::string> l_cands;
    std::string transcendental;  // adjoined to L before its inseparable steps
};

std::vector<std::vector<std::string>> subsets(const std::vector<std::string>& c) {
    std::vector<std::vector<std::string>> out;
    for (std::size_t i = 0; i < c.size(); ++i) out.push_back({c[i]});
    for (std::size_t i = 0; i < c.size(); ++i) {
        for (std::size_t j = i + 1; j < c.size(); ++j) out.push_back({c[i], c[j]});
    }
    return out;
}

std::string join(const std::vector<std::string>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + v[i];
    return s;
}

FieldTower base_tower(const Config& c) {
    FieldTower t = FieldTower::prime(PrimeField::fp(c.p)).with_ambient(c.vars);
    for (const auto& g : c.base_gens) t = t.adjoin_transcendental(g, parse_ratfunc(g, *t.ambient()));
    return t;
}

// Null when some generator is already in the field of the earlier ones.
std::optional<FieldTower> tower(FieldTower t, const std::vector<std::string>& gens) {
    for (const auto& g : gens) {
        try {
            t = adjoin_insep(t, parse_ratfunc(g, *t.ambient()), g);
        } catch (const Error& e) {
            if (e.code() == ErrorCode::InvalidArgument) return std::nullopt;
            throw;
        }
    }
    return t;
}

const std::vector<Config>& configs() {
    static const std::vector<Config> c = {
        {2, {"x", "y"}, {"x^2", "y^2"}, {"x", "y", "x*y", "x + y"}, {"x", "y", "x*y", "x + y"}, ""},
        {3, {"x", "y"}, {"x^3", "y^3"}, {"x", "y", "x*y", "x + y^2"}, {"x", "y", "x^2*y", "x + y"}, ""},
        {2, {"x"}, {"x^4"}, {"x", "x^2"}, {"x", "x^2", "x^3"}, ""},
        {3, {"x"}, {"x^9"}, {"x", "x^3"}, {"x", "x^3", "x^2"}, ""},
        {2, {"x", "y"}, {"x^4", "y^4"}, {"x^2", "y^2", "x"}, {"x^2*y^2", "x^2 + y^2", "y"}, ""},
        {2, {"x", "y", "z"}, {"x^2", "y^2"}, {"x", "y", "x*y"}, {"x*(y + z)", "x + z", "y*z"}, "z"},
        {3, {"x", "y", "z"}, {"x^3", "y^3"}, {"x", "x*y"}, {"x*z + y", "x + z^2"}, "z"},
    };
    return c;
}

}  // namespace

std::vector<FamilyInstance> binomial_family() {
    std::vector<FamilyInstance> out;
    for (const auto& c : configs()) {
        FieldTower base = base_tower(c);
        const std::size_t base_len = c.base_gens.size();
        FieldTower l_base = c.transcendental.empty()
                                ? base
                                : base.adjoin_transcendental(c.transcendental,
                                                             parse_ratfunc(c.transcendental, *base.ambient()));
        for (const auto& kg : subsets(c.k_cands)) {
            std::optional<FieldTower> K = tower(base, kg);
            if (!K) continue;
            for (const auto& lg : subsets(c.l_cands)) {
                std::optional<FieldTower> L = tower(l_base, lg);
                if (!L) continue;
                FamilyInstance f;
                f.p = c.p;
                f.label = "F_" + std::to_string(c.p) + "(" + join(c.base_gens) + "): k(" + join(kg) + ") vs k(" +
                          (c.transcendental.empty() ? "" : c.transcendental + "; ") + join(lg) + ")";
                f.K = {"K", *K, base_len};
                f.L = {"L", *L, base_len};
                f.l_transcendental = !c.transcendental.empty();
                out.push_back(std::move(f));
            }
        }
    }
    return out;
}

}  // namespace regtensor
