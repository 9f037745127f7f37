#include <json.hpp>

#include <map>
#include <sstream>

#include "engine.hpp"
#include "error.hpp"
#include "expr.hpp"
#include "insep.hpp"
#include "session.hpp"
#include "tensor.hpp"

namespace regtensor {

namespace {

using json = nlohmann::json;

constexpr int kSchemaVersion = 1;

struct BoundField {
    FieldTower tower;
    std::string base;
    std::size_t base_len = 0;
};

struct Env {
    std::map<std::string, BoundField> fields;
    std::map<std::string, AlgebraDescriptor> algebras;

    const BoundField& field(const std::string& name) const {
        auto it = fields.find(name);
        if (it == fields.end()) fail(ErrorCode::UnknownName, name + " is not available (its definition failed)");
        return it->second;
    }
    NamedField named(const std::string& name) const {
        const BoundField& b = field(name);
        return NamedField{name, b.tower, b.base_len};
    }
    std::pair<NamedField, NamedField> pair(const std::string& a, const std::string& b) const {
        if (field(a).base != field(b).base) {
            fail(ErrorCode::BaseMismatch, a + " and " + b + " are defined over different bases");
        }
        return {named(a), named(b)};
    }
};

FieldTower build_base(const BaseDecl& b) {
    PrimeField f = b.characteristic == 0 ? PrimeField::rationals() : PrimeField::fp(b.characteristic);
    FieldTower t = FieldTower::prime(f);
    if (b.ambient) t = t.with_ambient(b.ambient_vars);
    for (const auto& g : b.gens) {
        if (b.ambient) {
            t = t.adjoin_transcendental(g, parse_ratfunc(g, *t.ambient()));
        } else {
            t = t.adjoin_transcendental(g);
        }
    }
    return t;
}

AlgPoly parse_tower_poly(const FieldTower& t, const std::string& text) {
    const AlgElem one = t.one();
    ExprEval<AlgPoly> ev;
    ev.number = [&](const mpz_class& n) {
        return AlgPoly::constant(one, t.algebra()->scalar(RatFunc::constant(t.ring(), scalar_from_integer(t.prime_field(), n))));
    };
    ev.name = [&](const std::string& name, std::size_t) {
        if (name == "X") return AlgPoly::x(one);
        if (t.step_index(name)) return AlgPoly::constant(one, t.generator(name));
        if (t.ambient() && (*t.ambient())->index_of(name)) {
            return AlgPoly::constant(one, tower_element(t, parse_ratfunc(name, *t.ambient())));
        }
        fail(ErrorCode::UnknownName, "unknown generator " + name);
    };
    ev.inverse = [&](const AlgPoly& p) {
        if (p.is_zero() || !p.is_constant()) fail(ErrorCode::InvalidArgument, "only constants can be inverted");
        return AlgPoly::constant(one, p.coeff(0).inverse());
    };
    AlgPoly f = evaluate(parse_expr(text), ev);
    if (f.is_zero() || f.deg() < 1) fail(ErrorCode::InvalidArgument, "the polynomial " + text + " is constant");
    return f.monic();
}

FieldTower build_field(const FieldTower& parent, const FieldDecl& d) {
    FieldTower t = parent;
    for (const auto& g : d.groups) {
        for (const auto& item : g.items) {
            switch (g.kind) {
                case StepGroup::Kind::Insep:
                    if (!t.ambient()) fail(ErrorCode::AmbientUnavailable, "insep steps need an ambient base");
                    t = adjoin_insep(t, parse_ratfunc(item, *t.ambient()), item);
                    break;
                case StepGroup::Kind::Transcendental:
                    if (t.ambient()) {
                        t = t.adjoin_transcendental(item, parse_ratfunc(item, *t.ambient()));
                    } else {
                        if (parse_expr(item).kind != Expr::Kind::Name) {
                            fail(ErrorCode::InvalidArgument, "transcendentals without an ambient must be names");
                        }
                        t = t.adjoin_transcendental(item);
                    }
                    break;
                case StepGroup::Kind::Root:
                    t = t.adjoin_root(item, parse_tower_poly(t, g.poly));
                    break;
            }
        }
    }
    return t;
}

AlgebraDescriptor build_descriptor(const DescriptorDecl& d, const Env& env) {
    AlgebraDescriptor a;
    a.name = d.name;
    auto get = [&](const char* key) -> std::optional<bool> {
        auto it = d.flags.find(key);
        if (it == d.flags.end()) return std::nullopt;
        return it->second;
    };
    a.regular = get("regular");
    a.residually_separable = get("residually_separable");
    a.geometrically_regular = get("geometrically_regular");
    a.finitely_generated = get("finitely_generated");
    a.tensor_noetherian = get("tensor_noetherian");
    for (const auto& r : d.residue_fields) a.residue_fields.push_back(env.named(r));
    return a;
}

json witness_json(const Witness& w) {
    return std::visit(
        [](const auto& x) -> json {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, DegreeWitness>) {
                return {{"type", "degree"}, {"subset", x.subset}, {"deg_k", x.deg_k}, {"deg_L", x.deg_l},
                        {"source", x.source}};
            } else if constexpr (std::is_same_v<T, IntersectionWitness>) {
                return {{"type", "intersection"}, {"subset", x.subset},       {"meet_basis", x.meet_basis},
                        {"base_basis", x.k_basis}, {"meet_dim", x.meet_basis.size()},
                        {"base_dim", x.k_basis.size()}, {"equal", x.equal}};
            } else if constexpr (std::is_same_v<T, NilpotentWitness>) {
                return {{"type", "nilpotent"}, {"element", x.element}, {"nilpotency_index", x.nilpotency_index},
                        {"edim", x.edim}, {"krull_dim", x.krull_dim}};
            } else if constexpr (std::is_same_v<T, IdempotentWitness>) {
                return {{"type", "idempotents"},
                        {"idempotents", x.idempotents},
                        {"residue_fields", x.residue_fields},
                        {"residue_degrees", x.residue_degrees},
                        {"degrees_over", x.over_k ? "k" : "L"}};
            } else if constexpr (std::is_same_v<T, SeparabilityWitness>) {
                return {{"type", "separability"}, {"field", x.field}, {"shape", x.shape}, {"step", x.step},
                        {"reason", x.reason}};
            } else {
                return {{"type", "fiber"}, {"first", x.first}, {"second", x.second},
                        {"verdict", std::string(answer_name(x.answer))}, {"rule", x.rule}};
            }
        },
        w);
}

void verdict_json(json& r, const Verdict& v) {
    r["verdict"] = std::string(answer_name(v.regular));
    r["noetherian"] = {{"value", v.noetherian ? "yes" : "unknown"}, {"rule", v.noetherian_rule}};
    r["dim"] = v.krull_dim ? json(*v.krull_dim) : json(nullptr);
    json rules = json::array();
    for (const auto& rule : v.rules) rules.push_back(rule.name);
    r["rule_chain"] = rules;
    json ws = json::array();
    for (const auto& w : v.witnesses) ws.push_back(witness_json(w));
    r["witnesses"] = ws;
    r["assumptions"] = v.assumptions;
    r["notes"] = v.notes;
    if (!v.established.empty()) r["established"] = v.established;
}

json decomposition_json(const TensorAlgebra& t, const Decomposition& d) {
    json r;
    r["dim_over_L"] = t.dim();
    r["mode"] = t.ambient ? "ambient" : "tower";
    json fs = json::array();
    for (const auto& f : d.factors) {
        fs.push_back({{"residue", f.residue},
                      {"residue_degree", f.residue_degree},
                      {"residue_degree_over_k", f.residue_degree_over_k ? json(*f.residue_degree_over_k) : json(nullptr)},
                      {"length_dim", f.length_dim},
                      {"nilpotency_index", f.nilpotency_index},
                      {"edim", f.edim},
                      {"krull_dim", 0},
                      {"is_field", f.is_field()},
                      {"idempotent", t.render(f.idempotent)}});
    }
    r["factors"] = fs;
    json nil = json::array();
    for (const auto& n : d.nilradical) nil.push_back(t.render(n));
    r["nilradical"] = nil;
    r["reduced"] = d.is_reduced();
    r["domain"] = d.is_domain();
    r["field"] = d.is_field();
    r["regular_direct"] = d.regular();
    StructureCheck c = verify_structure(t, d);
    r["verified"] = {{"idempotents", c.idempotents_ok}, {"nilradical", c.nilradical_ok}, {"dimensions", c.dimensions_ok}};
    return r;
}

json run_query(const QueryDecl& q, const Env& env) {
    json r;
    switch (q.kind) {
        case QueryDecl::Kind::Regular: {
            auto [K, L] = env.pair(q.args[0], q.args[1]);
            verdict_json(r, decide_regular(K, L));
            break;
        }
        case QueryDecl::Kind::Dim: {
            auto [K, L] = env.pair(q.args[0], q.args[1]);
            r["dim"] = dim_tensor(K, L);
            r["td"] = {td_over_base(K), td_over_base(L)};
            r["rule_chain"] = {"dimension-formula"};
            break;
        }
        case QueryDecl::Kind::Decompose: {
            auto [K, L] = env.pair(q.args[0], q.args[1]);
            bool swapped = false;
            if (td_over_base(K) != 0 && td_over_base(L) == 0) {
                std::swap(K, L);
                swapped = true;
            }
            TensorAlgebra t = build_tensor(K.tower, L.tower, K.base_len);
            r = decomposition_json(t, decompose_local(t));
            r["swapped"] = swapped;
            break;
        }
        case QueryDecl::Kind::Conditions: {
            auto [K, L] = env.pair(q.args[0], q.args[1]);
            Verdict deg = check_theorem2(K, L);
            Answer inter = theorem2_by_intersections(K, L);
            r["degree_verdict"] = std::string(answer_name(deg.regular));
            r["intersection_verdict"] = std::string(answer_name(inter));
            r["agree"] = deg.regular == inter;
            break;
        }
        case QueryDecl::Kind::Intersect: {
            auto [K, L] = env.pair(q.args[0], q.args[1]);
            FieldIntersection x = intersect_fields(K, L);
            r["meet_basis"] = x.meet_basis;
            r["base_basis"] = x.base_basis;
            r["meet_dim"] = x.meet_basis.size();
            r["base_dim"] = x.base_basis.size();
            r["equals_base"] = x.equals_base;
            r["equals_first"] = x.equals_first;
            r["equals_second"] = x.equals_second;
            break;
        }
        case QueryDecl::Kind::SelfTensor:
            verdict_json(r, check_self_tensor(env.named(q.args[0])));
            break;
        case QueryDecl::Kind::Theorem3: {
            auto a = env.algebras.find(q.args[0]);
            auto b = env.algebras.find(q.args[1]);
            if (a == env.algebras.end() || b == env.algebras.end()) {
                fail(ErrorCode::UnknownName, "an algebra of this query is not available (its definition failed)");
            }
            verdict_json(r, check_theorem3(a->second, b->second, q.assume));
            break;
        }
    }
    return r;
}

std::string statement_text(const Statement& st) {
    Session one;
    one.statements.push_back(st);
    std::string s = one.to_text();
    if (!s.empty() && s.back() == '\n') s.pop_back();
    return s;
}

std::string scalar_text(const json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_array()) {
        std::string s = "{";
        for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + scalar_text(v[i]);
        return s + "}";
    }
    return v.dump();
}

void render_text(std::ostream& out, const json& rec) {
    out << "[" << rec["index"].get<std::size_t>() << "] line " << rec["line"].get<std::size_t>() << ": "
        << rec["query"].get<std::string>() << "\n";
    if (rec.contains("error")) {
        out << "  error " << rec["error"]["code"].get<std::string>() << ": " << rec["error"]["message"].get<std::string>()
            << "\n";
        return;
    }
    static const std::vector<std::string> order = {
        "verdict",   "noetherian", "dim",           "td",         "established", "rule_chain",   "degree_verdict",
        "intersection_verdict", "agree", "meet_basis", "base_basis", "meet_dim", "base_dim", "equals_base",
        "equals_first", "equals_second", "dim_over_L", "mode", "swapped", "reduced", "domain", "field",
        "regular_direct", "nilradical", "verified", "assumptions", "notes"};
    for (const auto& key : order) {
        if (!rec.contains(key)) continue;
        const json& v = rec[key];
        if (key == "noetherian") {
            out << "  noetherian: " << v["value"].get<std::string>();
            if (!v["rule"].get<std::string>().empty()) out << " (" << v["rule"].get<std::string>() << ")";
            out << "\n";
        } else if (key == "verified") {
            out << "  verified: idempotents " << v["idempotents"].dump() << ", nilradical " << v["nilradical"].dump()
                << ", dimensions " << v["dimensions"].dump() << "\n";
        } else if ((key == "assumptions" || key == "notes") && v.is_array()) {
            for (const auto& s : v) out << "  " << (key == "notes" ? "note" : "assumption") << ": " << s.get<std::string>() << "\n";
        } else if (!(v.is_array() && v.empty())) {
            out << "  " << key << ": " << scalar_text(v) << "\n";
        }
    }
    if (rec.contains("factors")) {
        std::size_t i = 0;
        for (const auto& f : rec["factors"]) {
            out << "  factor " << ++i << ": residue " << f["residue"].get<std::string>() << ", [kappa:L] = "
                << f["residue_degree"].dump();
            if (!f["residue_degree_over_k"].is_null()) out << ", [kappa:k] = " << f["residue_degree_over_k"].dump();
            out << ", nilpotency " << f["nilpotency_index"].dump() << ", edim " << f["edim"].dump() << " vs dim 0, "
                << (f["is_field"].get<bool>() ? "field" : "not a field") << ", idempotent "
                << f["idempotent"].get<std::string>() << "\n";
        }
    }
    if (rec.contains("witnesses")) {
        for (const auto& w : rec["witnesses"]) {
            const std::string type = w["type"].get<std::string>();
            out << "  witness " << type << ": ";
            if (type == "degree") {
                out << "S' = " << scalar_text(w["subset"]) << ", [k(S'):k] = " << w["deg_k"].dump()
                    << ", [L(S'):L] = " << w["deg_L"].dump();
            } else if (type == "intersection") {
                out << "S' = " << scalar_text(w["subset"]) << ", K_i meet L(S') has basis " << scalar_text(w["meet_basis"])
                    << ", k(S') has basis " << scalar_text(w["base_basis"]) << (w["equal"].get<bool>() ? ", equal" : ", different");
            } else if (type == "nilpotent") {
                out << w["element"].get<std::string>() << ", nilpotency " << w["nilpotency_index"].dump() << ", edim "
                    << w["edim"].dump() << " vs dim " << w["krull_dim"].dump();
            } else if (type == "idempotents") {
                out << w["idempotents"].size() << " idempotents, residue degrees " << scalar_text(w["residue_degrees"])
                    << " over " << w["degrees_over"].get<std::string>();
            } else if (type == "separability") {
                out << w["field"].get<std::string>() << " " << w["shape"].get<std::string>();
                if (!w["step"].get<std::string>().empty()) out << " at " << w["step"].get<std::string>();
                out << ": " << w["reason"].get<std::string>();
            } else {
                out << w["first"].get<std::string>() << " (x) " << w["second"].get<std::string>() << ": "
                    << w["verdict"].get<std::string>() << " by " << w["rule"].get<std::string>();
            }
            out << "\n";
        }
    }
}

}  // namespace

RunResult run_session(const Session& s, Format format) {
    Env env;
    json records = json::array();
    RunResult res;
    std::size_t index = 0;
    for (const auto& st : s.statements) {
        const auto* q = std::get_if<QueryDecl>(&st.body);
        json rec;
        try {
            if (const auto* b = std::get_if<BaseDecl>(&st.body)) {
                FieldTower t = build_base(*b);
                env.fields[b->name] = BoundField{t, b->name, t.steps().size()};
            } else if (const auto* f = std::get_if<FieldDecl>(&st.body)) {
                const BoundField& parent = env.field(f->parent);
                env.fields[f->name] = BoundField{build_field(parent.tower, *f), parent.base, parent.base_len};
            } else if (const auto* d = std::get_if<DescriptorDecl>(&st.body)) {
                env.algebras[d->name] = build_descriptor(*d, env);
            } else {
                rec = run_query(*q, env);
            }
        } catch (const Error& e) {
            rec = json::object();
            rec["error"] = {{"code", std::string(error_code_name(e.code()))}, {"message", e.what()}};
            ++res.errors;
        }
        if (!q && !rec.contains("error")) continue;
        rec["index"] = ++index;
        rec["line"] = st.line;
        rec["query"] = q ? query_text(*q) : statement_text(st);
        if (q) rec["kind"] = query_text(*q).substr(0, query_text(*q).find_first_of(" ("));
        records.push_back(rec);
    }
    if (format == Format::Json) {
        json out = {{"schema_version", kSchemaVersion}, {"records", records}, {"errors", res.errors}};
        res.output = out.dump(2) + "\n";
    } else {
        std::ostringstream out;
        for (const auto& r : records) render_text(out, r);
        if (res.errors) out << res.errors << " error(s)\n";
        res.output = out.str();
    }
    return res;
}

}  // namespace regtensor
