#ifndef REGTENSOR_EXPR_HPP
#define REGTENSOR_EXPR_HPP

#include <gmpxx.h>

#include <functional>
#include <string>
#include <vector>

#include "error.hpp"
#include "ratfunc.hpp"

namespace regtensor {

/// Parsed arithmetic expression over integers and identifiers:
///   expr   := term (('+' | '-') term)*
///   term   := unary (('*' | '/') unary)*
///   unary  := '-' unary | power
///   power  := atom ('^' integer)?
///   atom   := integer | identifier | '(' expr ')'
struct Expr {
    enum class Kind { Number, Name, Add, Sub, Mul, Div, Neg, Pow };
    Kind kind = Kind::Number;
    mpz_class number;
    std::string name;
    std::uint64_t exponent = 0;
    std::vector<Expr> kids;
    std::size_t column = 0;  // 1-based position in the parsed text
};

/// Throws Syntax with the column of the offending character.
Expr parse_expr(const std::string& text);

/// Identifiers appearing in the expression, in order of first use.
std::vector<std::string> expr_names(const Expr& e);

template <class V>
struct ExprEval {
    std::function<V(const mpz_class&)> number;
    std::function<V(const std::string&, std::size_t column)> name;
    std::function<V(const V&)> inverse;
};

template <class V>
V evaluate(const Expr& e, const ExprEval<V>& ev) {
    switch (e.kind) {
        case Expr::Kind::Number: return ev.number(e.number);
        case Expr::Kind::Name: return ev.name(e.name, e.column);
        case Expr::Kind::Add: return evaluate(e.kids[0], ev) + evaluate(e.kids[1], ev);
        case Expr::Kind::Sub: return evaluate(e.kids[0], ev) - evaluate(e.kids[1], ev);
        case Expr::Kind::Mul: return evaluate(e.kids[0], ev) * evaluate(e.kids[1], ev);
        case Expr::Kind::Div: return evaluate(e.kids[0], ev) * ev.inverse(evaluate(e.kids[1], ev));
        case Expr::Kind::Neg: return ev.number(0) - evaluate(e.kids[0], ev);
        case Expr::Kind::Pow: {
            V base = evaluate(e.kids[0], ev);
            V acc = ev.number(1);
            for (std::uint64_t k = e.exponent; k > 0; k >>= 1) {
                if (k & 1) acc = acc * base;
                if (k > 1) base = base * base;
            }
            return acc;
        }
    }
    fail(ErrorCode::InternalInconsistency, "unknown expression node");
}

/// Scalar of the ring's field from an integer literal.
Scalar scalar_from_integer(const PrimeField& field, const mpz_class& n);

/// Rational function in the ring's variables. Throws UnknownName.
RatFunc parse_ratfunc(const std::string& text, const RingPtr& ring);

}  // namespace regtensor

#endif  // REGTENSOR_EXPR_HPP
