#include "expr.hpp"

#include <cctype>

namespace regtensor {

namespace {

class Parser {
public:
    explicit Parser(const std::string& s) : s_(s) {}

    Expr run() {
        Expr e = expr();
        skip();
        if (pos_ < s_.size()) error("unexpected '" + std::string(1, s_[pos_]) + "'");
        return e;
    }

private:
    const std::string& s_;
    std::size_t pos_ = 0;

    [[noreturn]] void error(const std::string& what) const {
        fail(ErrorCode::Syntax, "column " + std::to_string(pos_ + 1) + ": " + what);
    }

    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    Expr node(Expr::Kind k, std::size_t col, std::vector<Expr> kids) {
        Expr e;
        e.kind = k;
        e.column = col;
        e.kids = std::move(kids);
        return e;
    }

    Expr expr() {
        Expr lhs = term();
        for (;;) {
            skip();
            const std::size_t col = pos_ + 1;
            if (accept('+')) {
                lhs = node(Expr::Kind::Add, col, {std::move(lhs), term()});
            } else if (accept('-')) {
                lhs = node(Expr::Kind::Sub, col, {std::move(lhs), term()});
            } else {
                return lhs;
            }
        }
    }

    Expr term() {
        Expr lhs = unary();
        for (;;) {
            skip();
            const std::size_t col = pos_ + 1;
            if (accept('*')) {
                lhs = node(Expr::Kind::Mul, col, {std::move(lhs), unary()});
            } else if (accept('/')) {
                lhs = node(Expr::Kind::Div, col, {std::move(lhs), unary()});
            } else {
                return lhs;
            }
        }
    }

    Expr unary() {
        skip();
        const std::size_t col = pos_ + 1;
        if (accept('-')) return node(Expr::Kind::Neg, col, {unary()});
        return power();
    }

    Expr power() {
        Expr base = atom();
        skip();
        const std::size_t col = pos_ + 1;
        if (!accept('^')) return base;
        skip();
        std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (start == pos_) error("expected an exponent");
        if (pos_ - start > 6) error("exponent too large");
        Expr e = node(Expr::Kind::Pow, col, {std::move(base)});
        e.exponent = std::stoull(s_.substr(start, pos_ - start));
        return e;
    }

    Expr atom() {
        skip();
        if (pos_ >= s_.size()) error("unexpected end of expression");
        const std::size_t col = pos_ + 1;
        const char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            Expr e = expr();
            if (!accept(')')) error("expected ')'");
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            Expr e;
            e.kind = Expr::Kind::Number;
            e.number = mpz_class(s_.substr(start, pos_ - start));
            e.column = col;
            return e;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos_;
            while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
            Expr e;
            e.kind = Expr::Kind::Name;
            e.name = s_.substr(start, pos_ - start);
            e.column = col;
            return e;
        }
        error("unexpected '" + std::string(1, c) + "'");
    }
};

void collect(const Expr& e, std::vector<std::string>& out) {
    if (e.kind == Expr::Kind::Name) {
        for (const auto& n : out) {
            if (n == e.name) return;
        }
        out.push_back(e.name);
    }
    for (const auto& k : e.kids) collect(k, out);
}

}  // namespace

Expr parse_expr(const std::string& text) { return Parser(text).run(); }

std::vector<std::string> expr_names(const Expr& e) {
    std::vector<std::string> out;
    collect(e, out);
    return out;
}

Scalar scalar_from_integer(const PrimeField& field, const mpz_class& n) {
    if (field.is_rational()) return Scalar(mpq_class(n));
    const mpz_class r = ((n % field.characteristic()) + field.characteristic()) % field.characteristic();
    return Scalar(r.get_ui(), field.characteristic());
}

RatFunc parse_ratfunc(const std::string& text, const RingPtr& ring) {
    Expr e = parse_expr(text);
    ExprEval<RatFunc> ev;
    ev.number = [&](const mpz_class& n) { return RatFunc::constant(ring, scalar_from_integer(ring->field, n)); };
    ev.name = [&](const std::string& name, std::size_t col) {
        auto idx = ring->index_of(name);
        if (!idx) fail(ErrorCode::UnknownName, "column " + std::to_string(col) + ": unknown variable " + name);
        return RatFunc::variable(ring, *idx);
    };
    ev.inverse = [](const RatFunc& r) { return r.inverse(); };
    return evaluate(e, ev);
}

}  // namespace regtensor
