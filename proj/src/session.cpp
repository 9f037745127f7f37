#include "session.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

#include "error.hpp"
#include "expr.hpp"

namespace regtensor {

namespace {

[[noreturn]] void syntax(std::size_t line, std::size_t column, const std::string& msg) {
    fail(ErrorCode::Syntax, "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + msg);
}

bool is_ident(const std::string& s) {
    if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
    return std::all_of(s.begin(), s.end(), [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
}

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

std::string join(const std::vector<std::string>& v, const std::string& sep) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) out += (i ? sep : "") + v[i];
    return out;
}

class Cursor {
public:
    Cursor(std::string text, std::size_t line) : s_(std::move(text)), line_(line) {}

    std::size_t line() const { return line_; }
    std::size_t column() const { return pos_ + 1; }
    bool at_end() {
        skip_ws();
        return pos_ >= s_.size();
    }
    char peek() {
        skip_ws();
        return pos_ < s_.size() ? s_[pos_] : '\0';
    }
    [[noreturn]] void error(const std::string& msg) { syntax(line_, column(), msg); }

    void expect(char c) {
        if (peek() != c) error(std::string("expected '") + c + "'");
        ++pos_;
    }
    bool accept(char c) {
        if (peek() != c) return false;
        ++pos_;
        return true;
    }
    std::string word() {
        skip_ws();
        std::size_t start = pos_;
        while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
        if (start == pos_) error("expected a name");
        return s_.substr(start, pos_ - start);
    }
    void keyword(const std::string& kw) {
        std::size_t col = (skip_ws(), column());
        std::string w = pos_ < s_.size() ? word() : "";
        if (w != kw) syntax(line_, col, "expected '" + kw + "'");
    }
    bool accept_keyword(const std::string& kw) {
        skip_ws();
        std::size_t save = pos_;
        if (pos_ < s_.size() && (std::isalpha(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) {
            if (word() == kw) return true;
        }
        pos_ = save;
        return false;
    }
    /// Text up to one of the stop characters at bracket depth 0, checked as
    /// an expression when `expr` is set.
    std::string item(const std::string& stops, bool expr) {
        skip_ws();
        std::size_t start = pos_;
        int depth = 0;
        while (pos_ < s_.size()) {
            char c = s_[pos_];
            if (depth == 0 && stops.find(c) != std::string::npos) break;
            if (c == '(' || c == '[') ++depth;
            if (c == ')' || c == ']') {
                if (depth == 0) break;
                --depth;
            }
            ++pos_;
        }
        std::string text = trim(s_.substr(start, pos_ - start));
        if (text.empty()) syntax(line_, start + 1, "expected an expression");
        if (expr) {
            try {
                parse_expr(text);
            } catch (const Error& e) {
                syntax(line_, start + 1, std::string("bad expression '") + text + "': " + e.what());
            }
        }
        return text;
    }
    std::vector<std::string> list(const std::string& stops, bool expr) {
        std::vector<std::string> out{item(stops + ",", expr)};
        while (accept(',')) out.push_back(item(stops + ",", expr));
        return out;
    }
    std::size_t pos() const { return pos_; }

private:
    void skip_ws() {
        while (pos_ < s_.size() && (s_[pos_] == ' ' || s_[pos_] == '\t' || s_[pos_] == '\r')) ++pos_;
    }

    std::string s_;
    std::size_t line_;
    std::size_t pos_ = 0;
};

enum class Binding { Base, Field, Algebra };

struct Parser {
    std::map<std::string, Binding> names;

    void bind(Cursor& c, std::size_t col, const std::string& name, Binding b) {
        if (names.count(name)) {
            fail(ErrorCode::DuplicateName, "line " + std::to_string(c.line()) + ", column " + std::to_string(col) +
                                               ": " + name + " is already defined");
        }
        names[name] = b;
    }

    void require(Cursor& c, std::size_t col, const std::string& name, std::initializer_list<Binding> kinds,
                 const char* what) {
        auto it = names.find(name);
        if (it == names.end()) {
            fail(ErrorCode::UnknownName, "line " + std::to_string(c.line()) + ", column " + std::to_string(col) +
                                             ": unknown name " + name);
        }
        if (std::find(kinds.begin(), kinds.end(), it->second) == kinds.end()) {
            syntax(c.line(), col, name + " is not " + what);
        }
    }

    std::string name_ref(Cursor& c, std::initializer_list<Binding> kinds, const char* what) {
        c.peek();
        std::size_t col = c.column();
        std::string n = c.word();
        require(c, col, n, kinds, what);
        return n;
    }

    BaseDecl base(Cursor& c) {
        BaseDecl b;
        std::size_t col = (c.peek(), c.column());
        b.name = c.word();
        c.expect('=');
        std::string f = c.word();
        if (f == "Q") {
            b.characteristic = 0;
        } else if (f == "Fp") {
            c.expect('(');
            std::size_t pcol = (c.peek(), c.column());
            std::string p = c.word();
            if (!std::all_of(p.begin(), p.end(), [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); })) {
                syntax(c.line(), pcol, "expected a prime");
            }
            b.characteristic = std::stoull(p);
            try {
                PrimeField::fp(b.characteristic);
            } catch (const Error&) {
                syntax(c.line(), pcol, p + " is not a prime");
            }
            c.expect(')');
        } else {
            c.error("expected Q or Fp(p)");
        }
        if (c.accept_keyword("subfield")) {
            c.keyword("of");
            c.keyword("ambient");
            c.expect('(');
            b.ambient = true;
            do {
                std::size_t vcol = (c.peek(), c.column());
                std::string v = c.word();
                if (std::find(b.ambient_vars.begin(), b.ambient_vars.end(), v) != b.ambient_vars.end()) {
                    syntax(c.line(), vcol, "repeated ambient variable " + v);
                }
                b.ambient_vars.push_back(v);
            } while (c.accept(','));
            c.expect(')');
        }
        if (c.accept_keyword("generated")) {
            c.keyword("by");
            c.expect('[');
            if (c.peek() != ']') {
                std::size_t gcol = c.column();
                b.gens = c.list("]", true);
                if (!b.ambient) {
                    for (const auto& g : b.gens) {
                        if (!is_ident(g)) syntax(c.line(), gcol, "generators without an ambient must be names");
                    }
                }
            }
            c.expect(']');
        }
        if (!c.at_end()) c.error("unexpected text");
        bind(c, col, b.name, Binding::Base);
        return b;
    }

    FieldDecl field(Cursor& c) {
        FieldDecl f;
        std::size_t col = (c.peek(), c.column());
        f.name = c.word();
        c.expect('=');
        f.parent = name_ref(c, {Binding::Base, Binding::Field}, "a field");
        if (c.accept_keyword("adjoin")) {
            do {
                StepGroup g;
                std::size_t kcol = (c.peek(), c.column());
                std::string kind = c.word();
                if (kind == "insep") {
                    g.kind = StepGroup::Kind::Insep;
                    g.items = c.list(";", true);
                } else if (kind == "transcendental") {
                    g.kind = StepGroup::Kind::Transcendental;
                    g.items = c.list(";", true);
                } else if (kind == "root") {
                    g.kind = StepGroup::Kind::Root;
                    g.items = {c.word()};
                    c.keyword("of");
                    g.poly = c.item(";", true);
                } else {
                    syntax(c.line(), kcol, "expected insep, transcendental or root");
                }
                f.groups.push_back(std::move(g));
            } while (c.accept(';'));
        }
        if (!c.at_end()) c.error("unexpected text");
        bind(c, col, f.name, Binding::Field);
        return f;
    }

    DescriptorDecl descriptor(Cursor& c) {
        static const std::set<std::string> kFlags = {"regular", "residually_separable", "geometrically_regular",
                                                     "finitely_generated", "tensor_noetherian"};
        DescriptorDecl d;
        std::size_t col = (c.peek(), c.column());
        d.name = c.word();
        c.expect('=');
        c.keyword("descriptor");
        while (!c.at_end()) {
            std::size_t kcol = c.column();
            std::string key = c.word();
            c.expect('=');
            if (key == "residue_fields") {
                c.expect('[');
                if (c.peek() != ']') {
                    do {
                        d.residue_fields.push_back(name_ref(c, {Binding::Base, Binding::Field}, "a field"));
                    } while (c.accept(','));
                }
                c.expect(']');
            } else if (kFlags.count(key)) {
                std::size_t vcol = (c.peek(), c.column());
                std::string v = c.word();
                if (v != "true" && v != "false") syntax(c.line(), vcol, "expected true or false");
                d.flags[key] = v == "true";
            } else {
                syntax(c.line(), kcol, "unknown descriptor key " + key);
            }
        }
        bind(c, col, d.name, Binding::Algebra);
        return d;
    }

    QueryDecl query(Cursor& c) {
        QueryDecl q;
        std::size_t kcol = (c.peek(), c.column());
        std::string kind = c.word();
        auto pair = [&](bool tensor) {
            if (tensor) c.keyword("tensor");
            c.expect('(');
            q.args.push_back(name_ref(c, {Binding::Base, Binding::Field}, "a field"));
            c.expect(',');
            q.args.push_back(name_ref(c, {Binding::Base, Binding::Field}, "a field"));
            c.expect(')');
        };
        if (kind == "regular") {
            q.kind = QueryDecl::Kind::Regular;
            pair(true);
        } else if (kind == "dim") {
            q.kind = QueryDecl::Kind::Dim;
            pair(true);
        } else if (kind == "decompose") {
            q.kind = QueryDecl::Kind::Decompose;
            pair(true);
        } else if (kind == "conditions") {
            q.kind = QueryDecl::Kind::Conditions;
            pair(true);
        } else if (kind == "intersect") {
            q.kind = QueryDecl::Kind::Intersect;
            pair(false);
        } else if (kind == "self_tensor") {
            q.kind = QueryDecl::Kind::SelfTensor;
            q.args.push_back(name_ref(c, {Binding::Base, Binding::Field}, "a field"));
        } else if (kind == "theorem3") {
            q.kind = QueryDecl::Kind::Theorem3;
            q.args.push_back(name_ref(c, {Binding::Algebra}, "an algebra"));
            q.args.push_back(name_ref(c, {Binding::Algebra}, "an algebra"));
            if (c.accept_keyword("assume")) {
                static const std::set<std::string> kLevels = {"i", "ii", "iii", "iv", "v"};
                do {
                    std::size_t lcol = (c.peek(), c.column());
                    std::string l = c.word();
                    if (!kLevels.count(l)) syntax(c.line(), lcol, "expected an assertion level i..v");
                    q.assume.push_back(l);
                } while (c.accept(','));
            }
        } else {
            syntax(c.line(), kcol, "unknown query " + kind);
        }
        if (!c.at_end()) c.error("unexpected text");
        return q;
    }
};

std::string group_text(const StepGroup& g) {
    switch (g.kind) {
        case StepGroup::Kind::Insep:
            return "insep " + join(g.items, ", ");
        case StepGroup::Kind::Transcendental:
            return "transcendental " + join(g.items, ", ");
        case StepGroup::Kind::Root:
            return "root " + g.items.at(0) + " of " + g.poly;
    }
    return "";
}

}  // namespace

std::size_t Session::query_count() const {
    return static_cast<std::size_t>(std::count_if(statements.begin(), statements.end(), [](const Statement& s) {
        return std::holds_alternative<QueryDecl>(s.body);
    }));
}

std::string query_text(const QueryDecl& q) {
    switch (q.kind) {
        case QueryDecl::Kind::Regular:
            return "regular tensor(" + q.args[0] + ", " + q.args[1] + ")";
        case QueryDecl::Kind::Dim:
            return "dim tensor(" + q.args[0] + ", " + q.args[1] + ")";
        case QueryDecl::Kind::Decompose:
            return "decompose tensor(" + q.args[0] + ", " + q.args[1] + ")";
        case QueryDecl::Kind::Conditions:
            return "conditions tensor(" + q.args[0] + ", " + q.args[1] + ")";
        case QueryDecl::Kind::Intersect:
            return "intersect(" + q.args[0] + ", " + q.args[1] + ")";
        case QueryDecl::Kind::SelfTensor:
            return "self_tensor " + q.args[0];
        case QueryDecl::Kind::Theorem3: {
            std::string s = "theorem3 " + q.args[0] + " " + q.args[1];
            if (!q.assume.empty()) s += " assume " + join(q.assume, ", ");
            return s;
        }
    }
    return "";
}

std::string Session::to_text() const {
    std::ostringstream out;
    for (const auto& st : statements) {
        if (const auto* b = std::get_if<BaseDecl>(&st.body)) {
            out << "base " << b->name << " = "
                << (b->characteristic == 0 ? std::string("Q") : "Fp(" + std::to_string(b->characteristic) + ")");
            if (b->ambient) out << " subfield of ambient(" << join(b->ambient_vars, ", ") << ")";
            if (!b->gens.empty()) out << " generated by [" << join(b->gens, ", ") << "]";
        } else if (const auto* f = std::get_if<FieldDecl>(&st.body)) {
            out << "field " << f->name << " = " << f->parent;
            if (!f->groups.empty()) {
                std::vector<std::string> gs;
                for (const auto& g : f->groups) gs.push_back(group_text(g));
                out << " adjoin " << join(gs, "; ");
            }
        } else if (const auto* d = std::get_if<DescriptorDecl>(&st.body)) {
            out << "algebra " << d->name << " = descriptor";
            for (const auto& [k, v] : d->flags) out << " " << k << "=" << (v ? "true" : "false");
            if (!d->residue_fields.empty()) out << " residue_fields=[" << join(d->residue_fields, ", ") << "]";
        } else {
            out << "query " << query_text(std::get<QueryDecl>(st.body));
        }
        out << "\n";
    }
    return out.str();
}

Session parse_session(const std::string& text) {
    Session s;
    Parser p;
    std::istringstream in(text);
    std::string raw;
    std::size_t line = 0;
    while (std::getline(in, raw)) {
        ++line;
        std::string body = raw.substr(0, raw.find('#'));
        if (trim(body).empty()) continue;
        Cursor c(body, line);
        std::size_t col = (c.peek(), c.column());
        std::string head = c.word();
        Statement st;
        st.line = line;
        if (head == "base") {
            st.body = p.base(c);
        } else if (head == "field") {
            st.body = p.field(c);
        } else if (head == "algebra") {
            st.body = p.descriptor(c);
        } else if (head == "query") {
            st.body = p.query(c);
        } else {
            syntax(line, col, "expected base, field, algebra or query");
        }
        s.statements.push_back(std::move(st));
    }
    return s;
}

}  // namespace regtensor
