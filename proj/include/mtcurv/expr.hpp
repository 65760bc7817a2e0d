#pragma once

#include <array>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mtcurv/errors.hpp"

namespace mtcurv {

enum class UnaryOp : std::uint8_t { neg, sin, cos, tan, cot, exp, ln, sqrt };
enum class BinaryOp : std::uint8_t { add, sub, mul, div, pow };

/// Variable bindings used by Expr::eval. Small flat map; lookups are linear,
/// which beats hashing for the handful of symbols a chart ever declares.
class EvalEnv {
public:
    EvalEnv() = default;
    EvalEnv(std::initializer_list<std::pair<std::string, double>> init) {
        for (auto& [name, value] : init) set(name, value);
    }

    void set(std::string_view name, double value) {
        for (auto& [n, v] : vars_) {
            if (n == name) {
                v = value;
                return;
            }
        }
        vars_.emplace_back(std::string(name), value);
    }

    const double* find(std::string_view name) const noexcept {
        for (const auto& [n, v] : vars_) {
            if (n == name) return &v;
        }
        return nullptr;
    }

private:
    std::vector<std::pair<std::string, double>> vars_;
};

/// Immutable expression tree over real constants, named variables, the unary
/// functions {neg, sin, cos, tan, cot, exp, ln, sqrt} and the binary ops
/// {+, -, *, /, ^}. Power exponents are restricted to constants, so symbolic
/// differentiation stays total on the grammar. Nodes are shared; copies are
/// cheap and all operations are pure.
class Expr {
    struct Node;
    using NodePtr = std::shared_ptr<const Node>;

    struct Node {
        enum class Kind : std::uint8_t { constant, variable, unary, binary };
        Kind kind;
        double value = 0.0;   // constant
        std::string name;     // variable
        UnaryOp uop{};
        BinaryOp bop{};
        NodePtr a, b;         // unary uses a only
    };

public:
    /// Default-constructed expression is the constant 0.
    Expr() : node_(zero_node()) {}

    static Expr constant(double v) {
        if (!std::isfinite(v)) throw DomainError("non-finite constant in expression");
        auto n = std::make_shared<Node>();
        n->kind = Node::Kind::constant;
        n->value = v;
        return Expr(std::move(n));
    }

    static Expr variable(std::string name) {
        auto n = std::make_shared<Node>();
        n->kind = Node::Kind::variable;
        n->name = std::move(name);
        return Expr(std::move(n));
    }

    static Expr unary(UnaryOp op, const Expr& a) {
        if (op == UnaryOp::neg && a.is_constant()) return constant(-a.constant_value());
        if (a.is_constant()) {
            // Constant folding, deferred to eval time when the value is outside
            // the function's domain.
            double folded = 0.0;
            if (try_apply(op, a.constant_value(), folded)) return constant(folded);
        }
        auto n = std::make_shared<Node>();
        n->kind = Node::Kind::unary;
        n->uop = op;
        n->a = a.node_;
        return Expr(std::move(n));
    }

    static Expr binary(BinaryOp op, const Expr& a, const Expr& b) {
        switch (op) {
        case BinaryOp::add:
            if (a.is_zero()) return b;
            if (b.is_zero()) return a;
            break;
        case BinaryOp::sub:
            if (b.is_zero()) return a;
            if (a.is_zero()) return unary(UnaryOp::neg, b);
            break;
        case BinaryOp::mul:
            if (a.is_zero() || b.is_zero()) return constant(0.0);
            if (a.is_one()) return b;
            if (b.is_one()) return a;
            break;
        case BinaryOp::div:
            if (b.is_one()) return a;
            break;
        case BinaryOp::pow:
            if (!b.is_constant())
                throw SyntaxError("power exponent must be a constant expression", 0);
            if (b.is_one()) return a;
            break;
        }
        if (a.is_constant() && b.is_constant()) {
            double folded = 0.0;
            if (try_apply(op, a.constant_value(), b.constant_value(), folded))
                return constant(folded);
        }
        auto n = std::make_shared<Node>();
        n->kind = Node::Kind::binary;
        n->bop = op;
        n->a = a.node_;
        n->b = b.node_;
        return Expr(std::move(n));
    }

    friend Expr operator+(const Expr& a, const Expr& b) { return binary(BinaryOp::add, a, b); }
    friend Expr operator-(const Expr& a, const Expr& b) { return binary(BinaryOp::sub, a, b); }
    friend Expr operator*(const Expr& a, const Expr& b) { return binary(BinaryOp::mul, a, b); }
    friend Expr operator/(const Expr& a, const Expr& b) { return binary(BinaryOp::div, a, b); }
    friend Expr operator-(const Expr& a) { return unary(UnaryOp::neg, a); }
    friend Expr operator*(double c, const Expr& e) { return constant(c) * e; }
    friend Expr operator*(const Expr& e, double c) { return constant(c) * e; }
    friend Expr operator/(const Expr& e, double c) { return e / constant(c); }
    friend Expr pow(const Expr& base, double exponent) {
        return binary(BinaryOp::pow, base, constant(exponent));
    }

    bool is_constant() const noexcept { return node_->kind == Node::Kind::constant; }
    double constant_value() const noexcept { return node_->value; }
    bool is_zero() const noexcept { return is_constant() && node_->value == 0.0; }
    bool is_one() const noexcept { return is_constant() && node_->value == 1.0; }

    /// Evaluates the tree. Domain violations surface as DomainError, never as
    /// NaN or infinity; unbound variables raise UnboundVariableError.
    double eval(const EvalEnv& env) const { return eval_node(*node_, env); }

    /// Exact partial derivative with respect to `var`. The result is
    /// simplified only by constant folding and identity elimination.
    Expr diff(std::string_view var) const { return diff_node(*node_, var); }

    /// Renders the expression so that parsing the result yields a tree with
    /// identical structure.
    std::string str() const {
        std::string out;
        print_node(*node_, 0, out);
        return out;
    }

    bool same_structure(const Expr& other) const { return nodes_equal(*node_, *other.node_); }

    /// All distinct variable names referenced by the tree.
    std::vector<std::string> variables() const {
        std::set<std::string> seen;
        collect_vars(*node_, seen);
        return {seen.begin(), seen.end()};
    }

    /// Throws UnknownVariableError if the tree references a symbol outside
    /// `declared`.
    void check_variables(const std::vector<std::string>& declared) const {
        for (const auto& v : variables()) {
            bool found = false;
            for (const auto& d : declared)
                if (d == v) { found = true; break; }
            if (!found) throw UnknownVariableError("unknown variable '" + v + "'");
        }
    }

    std::size_t node_count() const { return count_nodes(*node_); }

private:
    explicit Expr(NodePtr n) : node_(std::move(n)) {}

    static const NodePtr& zero_node() {
        static const NodePtr z = [] {
            auto n = std::make_shared<Node>();
            n->kind = Node::Kind::constant;
            n->value = 0.0;
            return n;
        }();
        return z;
    }

    static bool try_apply(UnaryOp op, double x, double& out) noexcept {
        switch (op) {
        case UnaryOp::neg: out = -x; break;
        case UnaryOp::sin: out = std::sin(x); break;
        case UnaryOp::cos: out = std::cos(x); break;
        case UnaryOp::tan: {
            if (std::cos(x) == 0.0) return false;
            out = std::tan(x);
            break;
        }
        case UnaryOp::cot: {
            const double s = std::sin(x);
            if (s == 0.0) return false;
            out = std::cos(x) / s;
            break;
        }
        case UnaryOp::exp: out = std::exp(x); break;
        case UnaryOp::ln: {
            if (x <= 0.0) return false;
            out = std::log(x);
            break;
        }
        case UnaryOp::sqrt: {
            if (x < 0.0) return false;
            out = std::sqrt(x);
            break;
        }
        }
        return std::isfinite(out);
    }

    static bool try_apply(BinaryOp op, double x, double y, double& out) noexcept {
        switch (op) {
        case BinaryOp::add: out = x + y; break;
        case BinaryOp::sub: out = x - y; break;
        case BinaryOp::mul: out = x * y; break;
        case BinaryOp::div: {
            if (y == 0.0) return false;
            out = x / y;
            break;
        }
        case BinaryOp::pow: {
            if (!pow_checked(x, y, out)) return false;
            break;
        }
        }
        return std::isfinite(out);
    }

    // Integer exponents are expanded by repeated multiplication: exact for the
    // small powers the grammar produces and independent of libm's pow.
    static bool pow_checked(double base, double exponent, double& out) noexcept {
        if (exponent == std::rint(exponent) && std::fabs(exponent) <= 64.0) {
            const long n = static_cast<long>(exponent);
            if (base == 0.0 && n < 0) return false;
            double acc = 1.0;
            for (long i = 0; i < std::labs(n); ++i) acc *= base;
            out = n < 0 ? 1.0 / acc : acc;
        } else {
            if (base < 0.0) return false;            // fractional power of a negative
            if (base == 0.0 && exponent < 0.0) return false;
            out = std::pow(base, exponent);
        }
        return true;
    }

    static double eval_node(const Node& n, const EvalEnv& env) {
        switch (n.kind) {
        case Node::Kind::constant:
            return n.value;
        case Node::Kind::variable: {
            const double* v = env.find(n.name);
            if (!v) throw UnboundVariableError("unbound variable '" + n.name + "'");
            return *v;
        }
        case Node::Kind::unary: {
            const double x = eval_node(*n.a, env);
            double out = 0.0;
            if (!try_apply(n.uop, x, out))
                throw DomainError(std::string(unary_name(n.uop)) + " domain violation at argument " +
                                  format_double(x));
            return out;
        }
        case Node::Kind::binary: {
            const double x = eval_node(*n.a, env);
            const double y = eval_node(*n.b, env);
            double out = 0.0;
            if (!try_apply(n.bop, x, y, out)) {
                if (n.bop == BinaryOp::div && y == 0.0) throw DomainError("division by zero");
                throw DomainError("domain violation in binary operation");
            }
            return out;
        }
        }
        throw DomainError("corrupt expression node");
    }

    static Expr wrap(const NodePtr& n) { return Expr(n); }

    static Expr diff_node(const Node& n, std::string_view var) {
        switch (n.kind) {
        case Node::Kind::constant:
            return constant(0.0);
        case Node::Kind::variable:
            return constant(n.name == var ? 1.0 : 0.0);
        case Node::Kind::unary: {
            const Expr u = wrap(n.a);
            const Expr du = diff_node(*n.a, var);
            switch (n.uop) {
            case UnaryOp::neg: return -du;
            case UnaryOp::sin: return unary(UnaryOp::cos, u) * du;
            case UnaryOp::cos: return -(unary(UnaryOp::sin, u) * du);
            case UnaryOp::tan: return du / pow(unary(UnaryOp::cos, u), 2.0);
            case UnaryOp::cot: return -(du / pow(unary(UnaryOp::sin, u), 2.0));
            case UnaryOp::exp: return unary(UnaryOp::exp, u) * du;
            case UnaryOp::ln: return du / u;
            case UnaryOp::sqrt: return du / (2.0 * unary(UnaryOp::sqrt, u));
            }
            break;
        }
        case Node::Kind::binary: {
            const Expr a = wrap(n.a);
            const Expr b = wrap(n.b);
            const Expr da = diff_node(*n.a, var);
            switch (n.bop) {
            case BinaryOp::add: return da + diff_node(*n.b, var);
            case BinaryOp::sub: return da - diff_node(*n.b, var);
            case BinaryOp::mul: return da * b + a * diff_node(*n.b, var);
            case BinaryOp::div: return (da * b - a * diff_node(*n.b, var)) / (b * b);
            case BinaryOp::pow: {
                const double c = n.b->value;
                if (c == 0.0) return constant(0.0);
                if (c == 2.0) return constant(2.0) * a * da;
                return constant(c) * pow(a, c - 1.0) * da;
            }
            }
            break;
        }
        }
        throw DomainError("corrupt expression node");
    }

    static const char* unary_name(UnaryOp op) noexcept {
        switch (op) {
        case UnaryOp::neg: return "neg";
        case UnaryOp::sin: return "sin";
        case UnaryOp::cos: return "cos";
        case UnaryOp::tan: return "tan";
        case UnaryOp::cot: return "cot";
        case UnaryOp::exp: return "exp";
        case UnaryOp::ln: return "ln";
        case UnaryOp::sqrt: return "sqrt";
        }
        return "?";
    }

    static std::string format_double(double v) {
        std::array<char, 32> buf{};
        auto [p, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
        (void)ec;
        return std::string(buf.data(), p);
    }

    // Precedence levels for printing: add/sub 1, mul/div 2, unary neg 3, pow 4.
    static int node_prec(const Node& n) noexcept {
        switch (n.kind) {
        case Node::Kind::constant:
            return n.value < 0.0 ? 3 : 5;   // negative literals print like a unary minus
        case Node::Kind::variable:
            return 5;
        case Node::Kind::unary:
            return n.uop == UnaryOp::neg ? 3 : 5;
        case Node::Kind::binary:
            switch (n.bop) {
            case BinaryOp::add:
            case BinaryOp::sub: return 1;
            case BinaryOp::mul:
            case BinaryOp::div: return 2;
            case BinaryOp::pow: return 4;
            }
        }
        return 5;
    }

    static void print_node(const Node& n, int parent_prec, std::string& out) {
        const int prec = node_prec(n);
        const bool parens = prec < parent_prec;
        if (parens) out += '(';
        switch (n.kind) {
        case Node::Kind::constant:
            out += format_double(n.value);
            break;
        case Node::Kind::variable:
            out += n.name;
            break;
        case Node::Kind::unary:
            if (n.uop == UnaryOp::neg) {
                out += '-';
                print_node(*n.a, 3, out);
            } else {
                out += unary_name(n.uop);
                out += '(';
                print_node(*n.a, 0, out);
                out += ')';
            }
            break;
        case Node::Kind::binary: {
            const char* sym = nullptr;
            switch (n.bop) {
            case BinaryOp::add: sym = "+"; break;
            case BinaryOp::sub: sym = "-"; break;
            case BinaryOp::mul: sym = "*"; break;
            case BinaryOp::div: sym = "/"; break;
            case BinaryOp::pow: sym = "^"; break;
            }
            if (n.bop == BinaryOp::pow) {
                print_node(*n.a, prec + 1, out);   // base binds tighter
                out += sym;
                print_node(*n.b, prec, out);       // right-associative
            } else {
                print_node(*n.a, prec, out);
                out += sym;
                print_node(*n.b, prec + 1, out);   // left-associative
            }
            break;
        }
        }
        if (parens) out += ')';
    }

    static bool nodes_equal(const Node& a, const Node& b) {
        if (a.kind != b.kind) return false;
        switch (a.kind) {
        case Node::Kind::constant: return a.value == b.value;
        case Node::Kind::variable: return a.name == b.name;
        case Node::Kind::unary: return a.uop == b.uop && nodes_equal(*a.a, *b.a);
        case Node::Kind::binary:
            return a.bop == b.bop && nodes_equal(*a.a, *b.a) && nodes_equal(*a.b, *b.b);
        }
        return false;
    }

    static void collect_vars(const Node& n, std::set<std::string>& out) {
        switch (n.kind) {
        case Node::Kind::constant: break;
        case Node::Kind::variable: out.insert(n.name); break;
        case Node::Kind::unary: collect_vars(*n.a, out); break;
        case Node::Kind::binary:
            collect_vars(*n.a, out);
            collect_vars(*n.b, out);
            break;
        }
    }

    static std::size_t count_nodes(const Node& n) {
        switch (n.kind) {
        case Node::Kind::constant:
        case Node::Kind::variable: return 1;
        case Node::Kind::unary: return 1 + count_nodes(*n.a);
        case Node::Kind::binary: return 1 + count_nodes(*n.a) + count_nodes(*n.b);
        }
        return 1;
    }

    NodePtr node_;
};

} // namespace mtcurv
