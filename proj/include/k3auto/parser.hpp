#pragma once

// Recursive-descent parser for polynomial and rational expressions.
//
//   expr    := term (('+' | '-') term)*
//   term    := unary (('*' | '/') unary)*
//   unary   := ('+' | '-') unary | power
//   power   := primary ('^' integer)?
//   primary := integer | 'z' | variable | '(' expr ')'
//
// `z` is the field generator zeta_n; variables are drawn from {x, y, t}.

#include <cctype>
#include <string>
#include <string_view>

#include "multipoly.hpp"

namespace k3auto {

class ExpressionParser {
public:
    ExpressionParser(std::string_view src, std::string_view allowed_vars, FieldHandle field)
        : src_(src), allowed_(allowed_vars), field_(std::move(field)) {}

    RationalFunction parse() {
        RationalFunction r = expr();
        skip_ws();
        if (pos_ < src_.size()) fail("unexpected '" + std::string(1, src_[pos_]) + "'");
        return r;
    }

private:
    [[noreturn]] void fail(const std::string& msg, ErrorKind kind = ErrorKind::SyntaxError) const {
        throw Error(kind, "at column " + std::to_string(pos_ + 1) + ": " + msg + " in \"" + std::string(src_) + "\"");
    }

    void skip_ws() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    }
    bool accept(char c) {
        skip_ws();
        if (pos_ < src_.size() && src_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    RationalFunction expr() {
        RationalFunction acc = term();
        while (true) {
            if (accept('+')) {
                acc = acc + term();
            } else if (accept('-')) {
                acc = acc - term();
            } else {
                return acc;
            }
        }
    }

    RationalFunction term() {
        RationalFunction acc = unary();
        while (true) {
            if (accept('*')) {
                acc = acc * unary();
            } else if (accept('/')) {
                const std::size_t at = pos_;
                RationalFunction d = unary();
                if (d.is_zero()) {
                    pos_ = at;
                    fail("division by an identically zero expression", ErrorKind::ZeroDenominator);
                }
                acc = acc / d;
            } else {
                return acc;
            }
        }
    }

    RationalFunction unary() {
        if (accept('-')) return -unary();
        if (accept('+')) return unary();
        return power();
    }

    RationalFunction power() {
        RationalFunction base = primary();
        if (accept('^')) {
            skip_ws();
            if (pos_ >= src_.size() || !std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
                fail("'^' expects a nonnegative integer exponent");
            }
            const BigInt e = integer();
            if (e > 4096) fail("exponent too large");
            base = base.pow(static_cast<unsigned>(e));
        }
        return base;
    }

    BigInt integer() {
        BigInt v = 0;
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
            v = v * 10 + (src_[pos_] - '0');
            ++pos_;
        }
        return v;
    }

    RationalFunction primary() {
        skip_ws();
        if (pos_ >= src_.size()) fail("unexpected end of expression");
        const char c = src_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            return RationalFunction(MultiPoly(CycloNum(Rational(integer()))));
        }
        if (c == '(') {
            ++pos_;
            RationalFunction inner = expr();
            if (!accept(')')) fail("expected ')'");
            return inner;
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::size_t end = pos_;
            while (end < src_.size() && std::isalnum(static_cast<unsigned char>(src_[end]))) ++end;
            const std::string_view name = src_.substr(pos_, end - pos_);
            if (name == "z") {
                if (!field_) fail("'z' used without a field order", ErrorKind::UnknownVariable);
                pos_ = end;
                return RationalFunction(MultiPoly(zeta_pow(field_, 1)));
            }
            if (name.size() != 1 || allowed_.find(name[0]) == std::string_view::npos ||
                variable_index(name[0]) < 0) {
                fail("unknown variable '" + std::string(name) + "'", ErrorKind::UnknownVariable);
            }
            pos_ = end;
            return RationalFunction(MultiPoly::variable(variable_index(name[0])));
        }
        fail("unexpected '" + std::string(1, c) + "'");
    }

    std::string_view src_;
    std::string_view allowed_;
    FieldHandle field_;
    std::size_t pos_ = 0;
};

/// Parse an expression over the variables listed in `allowed_vars` (a subset of "xyt").
inline RationalFunction parse_expression(std::string_view src, std::string_view allowed_vars,
                                         const FieldHandle& field) {
    return ExpressionParser(src, allowed_vars, field).parse();
}

/// Parse an expression that must be a polynomial in t alone.
inline UniPoly parse_t_poly(std::string_view src, const FieldHandle& field) {
    const RationalFunction r = parse_expression(src, "t", field);
    if (!r.is_polynomial()) throw Error(ErrorKind::InputError, "expected a polynomial in t: \"" + std::string(src) + "\"");
    return *r.num().as_t_poly();
}

}  // namespace k3auto
