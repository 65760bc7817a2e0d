#pragma once

#include <cctype>
#include <charconv>
#include <string>
#include <string_view>

#include "mtcurv/errors.hpp"
#include "mtcurv/expr.hpp"

namespace mtcurv {

/// Recursive-descent parser for the expression grammar:
///
///   expr   = term { ("+" | "-") term }
///   term   = unary { ("*" | "/") unary }
///   unary  = "-" unary | power
///   power  = atom [ "^" unary ]            (right-associative)
///   atom   = number | name | name "(" expr ")" | "(" expr ")"
///
/// so precedence is pow > unary minus > mul/div > add/sub. Function names are
/// fixed to {sin, cos, tan, cot, exp, ln, sqrt}; every other name is a
/// variable reference, validated against declared symbols at a later binding
/// check. Power exponents must fold to constants.
class Parser {
public:
    static Expr parse(std::string_view text) {
        Parser p(text);
        Expr e = p.parse_expr();
        p.skip_ws();
        if (p.pos_ != text.size())
            throw SyntaxError("unexpected trailing input", p.pos_);
        return e;
    }

private:
    explicit Parser(std::string_view text) : text_(text) {}

    std::string_view text_;
    std::size_t pos_ = 0;

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool peek(char c) {
        skip_ws();
        return pos_ < text_.size() && text_[pos_] == c;
    }

    bool accept(char c) {
        if (peek(c)) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c, const char* what) {
        if (!accept(c)) throw SyntaxError(std::string("expected ") + what, pos_);
    }

    Expr parse_expr() {
        Expr e = parse_term();
        for (;;) {
            if (accept('+'))
                e = Expr::binary(BinaryOp::add, e, parse_term());
            else if (accept('-'))
                e = Expr::binary(BinaryOp::sub, e, parse_term());
            else
                return e;
        }
    }

    Expr parse_term() {
        Expr e = parse_unary();
        for (;;) {
            if (accept('*'))
                e = Expr::binary(BinaryOp::mul, e, parse_unary());
            else if (accept('/'))
                e = Expr::binary(BinaryOp::div, e, parse_unary());
            else
                return e;
        }
    }

    Expr parse_unary() {
        if (accept('-')) return Expr::unary(UnaryOp::neg, parse_unary());
        return parse_power();
    }

    Expr parse_power() {
        Expr base = parse_atom();
        if (accept('^')) {
            const std::size_t exp_offset = pos_;
            skip_ws();
            Expr exponent = parse_unary();
            if (!exponent.is_constant())
                throw SyntaxError("power exponent must be a constant expression", exp_offset);
            return Expr::binary(BinaryOp::pow, base, exponent);
        }
        return base;
    }

    Expr parse_atom() {
        skip_ws();
        if (pos_ >= text_.size())
            throw SyntaxError("expected number, name, '(' or '-'", pos_);
        const char c = text_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return parse_name();
        if (accept('(')) {
            Expr e = parse_expr();
            expect(')', "')'");
            return e;
        }
        throw SyntaxError("expected number, name, '(' or '-'", pos_);
    }

    Expr parse_number() {
        const std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (pos_ < text_.size() && text_[pos_] == '.') {
            ++pos_;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        }
        if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
            std::size_t mark = pos_ + 1;
            if (mark < text_.size() && (text_[mark] == '+' || text_[mark] == '-')) ++mark;
            if (mark < text_.size() && std::isdigit(static_cast<unsigned char>(text_[mark]))) {
                pos_ = mark;
                while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
                    ++pos_;
            }
        }
        double value = 0.0;
        const char* first = text_.data() + start;
        const char* last = text_.data() + pos_;
        auto [p, ec] = std::from_chars(first, last, value);
        if (ec != std::errc() || p != last)
            throw SyntaxError("malformed number literal", start);
        return Expr::constant(value);
    }

    Expr parse_name() {
        const std::size_t start = pos_;
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
            ++pos_;
        std::string name(text_.substr(start, pos_ - start));
        if (peek('(')) {
            UnaryOp op;
            if (name == "sin") op = UnaryOp::sin;
            else if (name == "cos") op = UnaryOp::cos;
            else if (name == "tan") op = UnaryOp::tan;
            else if (name == "cot") op = UnaryOp::cot;
            else if (name == "exp") op = UnaryOp::exp;
            else if (name == "ln") op = UnaryOp::ln;
            else if (name == "sqrt") op = UnaryOp::sqrt;
            else throw UnknownFunctionError("unknown function '" + name + "'");
            expect('(', "'('");
            Expr arg = parse_expr();
            expect(')', "')'");
            return Expr::unary(op, arg);
        }
        return Expr::variable(std::move(name));
    }
};

/// Parses `text` into an expression tree. See Parser for the grammar.
inline Expr parse(std::string_view text) { return Parser::parse(text); }

} // namespace mtcurv
