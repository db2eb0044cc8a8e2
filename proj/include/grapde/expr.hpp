#pragma once

#include "grapde/numeric.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <algorithm>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace grapde {

enum class Var { u, v, w };
enum class Func { abs, sqrt, sin, cos, exp, log, atan, sign };
enum class ExprKind { number, variable, coefficient, add, sub, mul, div, pow, neg, call };

inline const char* to_string(Var v)
{
    switch (v) {
    case Var::u: return "u";
    case Var::v: return "v";
    case Var::w: return "w";
    }
    return "?";
}

inline const char* to_string(Func f)
{
    switch (f) {
    case Func::abs: return "abs";
    case Func::sqrt: return "sqrt";
    case Func::sin: return "sin";
    case Func::cos: return "cos";
    case Func::exp: return "exp";
    case Func::log: return "log";
    case Func::atan: return "atan";
    case Func::sign: return "sign";
    }
    return "?";
}

inline std::optional<Func> function_named(std::string_view name)
{
    for (Func f : {Func::abs, Func::sqrt, Func::sin, Func::cos, Func::exp, Func::log, Func::atan, Func::sign}) {
        if (name == to_string(f)) {
            return f;
        }
    }
    return std::nullopt;
}

/// Immutable expression tree over u, v, w, per-vertex coefficients and reals.
///
/// Number nodes never hold negative values; negative constants are Neg(number)
/// so that printing and re-parsing reproduce the same tree.
class Expr {
public:
    Expr() : Expr(make_number(0.0)) {}

    static Expr number(double value)
    {
        if (!std::isfinite(value)) {
            throw DomainError("non-finite literal in expression");
        }
        if (value < 0.0) {
            return raw_unary(ExprKind::neg, make_number(-value));
        }
        return make_number(value == 0.0 ? 0.0 : value);
    }
    static Expr variable(Var v)
    {
        auto n = std::make_shared<Node>();
        n->kind = ExprKind::variable;
        n->var = v;
        return Expr(std::move(n));
    }
    static Expr coefficient(std::string name)
    {
        auto n = std::make_shared<Node>();
        n->kind = ExprKind::coefficient;
        n->name = std::move(name);
        return Expr(std::move(n));
    }
    /// Builds a binary node without simplification.
    static Expr raw_binary(ExprKind kind, Expr lhs, Expr rhs)
    {
        auto n = std::make_shared<Node>();
        n->kind = kind;
        n->lhs = std::move(lhs.node_);
        n->rhs = std::move(rhs.node_);
        return Expr(std::move(n));
    }
    static Expr raw_unary(ExprKind kind, Expr arg, Func f = Func::abs)
    {
        auto n = std::make_shared<Node>();
        n->kind = kind;
        n->func = f;
        n->lhs = std::move(arg.node_);
        return Expr(std::move(n));
    }

    [[nodiscard]] ExprKind kind() const noexcept { return node_->kind; }
    [[nodiscard]] double value() const noexcept { return node_->value; }
    [[nodiscard]] Var var() const noexcept { return node_->var; }
    [[nodiscard]] Func func() const noexcept { return node_->func; }
    [[nodiscard]] const std::string& name() const noexcept { return node_->name; }
    [[nodiscard]] Expr lhs() const { return Expr(node_->lhs); }
    [[nodiscard]] Expr rhs() const { return Expr(node_->rhs); }

    [[nodiscard]] bool is_number() const noexcept { return kind() == ExprKind::number; }
    [[nodiscard]] bool is_number(double v) const noexcept { return is_number() && value() == v; }

    /// Numeric value when the tree is a (possibly negated) literal.
    [[nodiscard]] std::optional<double> constant_value() const
    {
        if (is_number()) {
            return value();
        }
        if (kind() == ExprKind::neg && lhs().is_number()) {
            return -lhs().value();
        }
        return std::nullopt;
    }

    friend bool operator==(const Expr& a, const Expr& b) { return equal(a.node_.get(), b.node_.get()); }

private:
    struct Node {
        ExprKind kind = ExprKind::number;
        double value = 0.0;
        Var var = Var::u;
        Func func = Func::abs;
        std::string name;
        std::shared_ptr<const Node> lhs;
        std::shared_ptr<const Node> rhs;
    };

    explicit Expr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

    static Expr make_number(double v)
    {
        auto n = std::make_shared<Node>();
        n->kind = ExprKind::number;
        n->value = v;
        return Expr(std::move(n));
    }

    static bool equal(const Node* a, const Node* b)
    {
        if (a == b) {
            return true;
        }
        if (!a || !b || a->kind != b->kind) {
            return false;
        }
        switch (a->kind) {
        case ExprKind::number: return a->value == b->value;
        case ExprKind::variable: return a->var == b->var;
        case ExprKind::coefficient: return a->name == b->name;
        case ExprKind::neg: return equal(a->lhs.get(), b->lhs.get());
        case ExprKind::call: return a->func == b->func && equal(a->lhs.get(), b->lhs.get());
        default: return equal(a->lhs.get(), b->lhs.get()) && equal(a->rhs.get(), b->rhs.get());
        }
    }

    std::shared_ptr<const Node> node_;
};

// ---------------------------------------------------------------------------
// Simplifying constructors: constant folding and 0/1 identities only.

namespace build {

inline Expr fold_or(ExprKind kind, const Expr& a, const Expr& b, double value)
{
    if (std::isfinite(value)) {
        return Expr::number(value);
    }
    return Expr::raw_binary(kind, a, b);
}

inline Expr neg(const Expr& a)
{
    if (auto c = a.constant_value()) {
        return Expr::number(-*c);
    }
    if (a.kind() == ExprKind::neg) {
        return a.lhs();
    }
    return Expr::raw_unary(ExprKind::neg, a);
}

inline Expr add(const Expr& a, const Expr& b)
{
    const auto ca = a.constant_value();
    const auto cb = b.constant_value();
    if (ca && cb) {
        return fold_or(ExprKind::add, a, b, *ca + *cb);
    }
    if (ca && *ca == 0.0) {
        return b;
    }
    if (cb && *cb == 0.0) {
        return a;
    }
    return Expr::raw_binary(ExprKind::add, a, b);
}

inline Expr sub(const Expr& a, const Expr& b)
{
    const auto ca = a.constant_value();
    const auto cb = b.constant_value();
    if (ca && cb) {
        return fold_or(ExprKind::sub, a, b, *ca - *cb);
    }
    if (cb && *cb == 0.0) {
        return a;
    }
    if (ca && *ca == 0.0) {
        return neg(b);
    }
    return Expr::raw_binary(ExprKind::sub, a, b);
}

inline Expr mul(const Expr& a, const Expr& b)
{
    const auto ca = a.constant_value();
    const auto cb = b.constant_value();
    if (ca && cb) {
        return fold_or(ExprKind::mul, a, b, *ca * *cb);
    }
    if ((ca && *ca == 0.0) || (cb && *cb == 0.0)) {
        return Expr::number(0.0);
    }
    if (ca && *ca == 1.0) {
        return b;
    }
    if (cb && *cb == 1.0) {
        return a;
    }
    if (ca && *ca == -1.0) {
        return neg(b);
    }
    if (cb && *cb == -1.0) {
        return neg(a);
    }
    return Expr::raw_binary(ExprKind::mul, a, b);
}

inline Expr div(const Expr& a, const Expr& b)
{
    const auto ca = a.constant_value();
    const auto cb = b.constant_value();
    if (ca && cb && *cb != 0.0) {
        return fold_or(ExprKind::div, a, b, *ca / *cb);
    }
    if (ca && *ca == 0.0) {
        return Expr::number(0.0);
    }
    if (cb && *cb == 1.0) {
        return a;
    }
    return Expr::raw_binary(ExprKind::div, a, b);
}

inline Expr pow(const Expr& a, const Expr& b)
{
    const auto ca = a.constant_value();
    const auto cb = b.constant_value();
    if (cb && *cb == 0.0) {
        return Expr::number(1.0);
    }
    if (cb && *cb == 1.0) {
        return a;
    }
    if (ca && cb && (*ca > 0.0 || std::floor(*cb) == *cb)) {
        return fold_or(ExprKind::pow, a, b, std::pow(*ca, *cb));
    }
    return Expr::raw_binary(ExprKind::pow, a, b);
}

inline Expr call(Func f, const Expr& a)
{
    return Expr::raw_unary(ExprKind::call, a, f);
}

} // namespace build

// ---------------------------------------------------------------------------
// Printing

namespace detail {

inline int precedence(const Expr& e)
{
    switch (e.kind()) {
    case ExprKind::add:
    case ExprKind::sub: return 1;
    case ExprKind::mul:
    case ExprKind::div: return 2;
    case ExprKind::neg: return 3;
    case ExprKind::pow: return 4;
    default: return 5;
    }
}

inline std::string format_number(double v)
{
    std::array<char, 64> buf{};
    auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return {buf.data(), res.ptr};
}

inline void print(const Expr& e, std::string& out)
{
    auto child = [&](const Expr& c, bool parens) {
        if (parens) {
            out += '(';
        }
        print(c, out);
        if (parens) {
            out += ')';
        }
    };
    const int prec = precedence(e);
    switch (e.kind()) {
    case ExprKind::number: out += format_number(e.value()); return;
    case ExprKind::variable: out += to_string(e.var()); return;
    case ExprKind::coefficient: out += e.name() + "(x)"; return;
    case ExprKind::call:
        out += to_string(e.func());
        child(e.lhs(), true);
        return;
    case ExprKind::neg:
        out += '-';
        child(e.lhs(), precedence(e.lhs()) < 3);
        return;
    case ExprKind::pow:
        child(e.lhs(), precedence(e.lhs()) <= 4);
        out += '^';
        child(e.rhs(), precedence(e.rhs()) < 3);
        return;
    default: break;
    }
    const char* op = e.kind() == ExprKind::add ? "+" : e.kind() == ExprKind::sub ? "-" : e.kind() == ExprKind::mul ? "*" : "/";
    child(e.lhs(), precedence(e.lhs()) < prec);
    out += op;
    child(e.rhs(), precedence(e.rhs()) <= prec);
}

} // namespace detail

/// Source text that parses back to a structurally equal tree.
inline std::string to_string(const Expr& e)
{
    std::string out;
    detail::print(e, out);
    return out;
}

// ---------------------------------------------------------------------------
// Parsing
//
//   expr   := term (('+'|'-') term)*
//   term   := factor (('*'|'/') factor)*
//   factor := '-' factor | power
//   power  := atom ('^' factor)?
//   atom   := number | 'u' | 'v' | 'w' | ident ('(' 'x' ')')? | func '(' expr ')' | '(' expr ')'
//
// so '^' is right-associative and binds tighter than unary minus.

class ParseError : public InputError {
public:
    ParseError(const std::string& msg, int line, int column)
        : InputError("parse error at " + std::to_string(line) + ":" + std::to_string(column) + ": " + msg),
          line_(line), column_(column)
    {
    }
    [[nodiscard]] int line() const noexcept { return line_; }
    [[nodiscard]] int column() const noexcept { return column_; }

private:
    int line_;
    int column_;
};

namespace detail {

class Parser {
public:
    explicit Parser(std::string_view src) : src_(src) {}

    Expr parse()
    {
        auto e = expr();
        skip_ws();
        if (pos_ < src_.size()) {
            fail(std::string("unexpected '") + src_[pos_] + "'");
        }
        return e;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const
    {
        int line = 1;
        int col = 1;
        for (std::size_t i = 0; i < pos_ && i < src_.size(); ++i) {
            if (src_[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        throw ParseError(msg, line, col);
    }

    void skip_ws()
    {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) {
            ++pos_;
        }
    }

    bool accept(char c)
    {
        skip_ws();
        if (pos_ < src_.size() && src_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c)
    {
        if (!accept(c)) {
            fail(pos_ < src_.size() ? std::string("expected '") + c + "', found '" + src_[pos_] + "'"
                                    : std::string("expected '") + c + "' at end of input");
        }
    }

    Expr expr()
    {
        auto lhs = term();
        for (;;) {
            if (accept('+')) {
                lhs = Expr::raw_binary(ExprKind::add, lhs, term());
            } else if (accept('-')) {
                lhs = Expr::raw_binary(ExprKind::sub, lhs, term());
            } else {
                return lhs;
            }
        }
    }

    Expr term()
    {
        auto lhs = factor();
        for (;;) {
            if (accept('*')) {
                lhs = Expr::raw_binary(ExprKind::mul, lhs, factor());
            } else if (accept('/')) {
                lhs = Expr::raw_binary(ExprKind::div, lhs, factor());
            } else {
                return lhs;
            }
        }
    }

    Expr factor()
    {
        if (accept('-')) {
            return Expr::raw_unary(ExprKind::neg, factor());
        }
        auto base = atom();
        if (accept('^')) {
            return Expr::raw_binary(ExprKind::pow, base, factor());
        }
        return base;
    }

    Expr atom()
    {
        skip_ws();
        if (pos_ >= src_.size()) {
            fail("unexpected end of input");
        }
        const char c = src_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            return number();
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            return identifier();
        }
        if (accept('(')) {
            auto e = expr();
            expect(')');
            return e;
        }
        fail(std::string("unexpected '") + c + "'");
    }

    Expr number()
    {
        const std::size_t start = pos_;
        auto digits = [&] {
            while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
                ++pos_;
            }
        };
        digits();
        if (pos_ < src_.size() && src_[pos_] == '.') {
            ++pos_;
            digits();
        }
        if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
            std::size_t look = pos_ + 1;
            if (look < src_.size() && (src_[look] == '+' || src_[look] == '-')) {
                ++look;
            }
            if (look < src_.size() && std::isdigit(static_cast<unsigned char>(src_[look]))) {
                pos_ = look;
                digits();
            }
        }
        double value = 0.0;
        const auto text = src_.substr(start, pos_ - start);
        auto res = std::from_chars(text.data(), text.data() + text.size(), value);
        if (res.ec != std::errc() || res.ptr != text.data() + text.size()) {
            pos_ = start;
            fail("malformed number '" + std::string(text) + "'");
        }
        return Expr::number(value);
    }

    Expr identifier()
    {
        const std::size_t start = pos_;
        while (pos_ < src_.size()
               && (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) {
            ++pos_;
        }
        const std::string name(src_.substr(start, pos_ - start));
        if (name == "u") {
            return Expr::variable(Var::u);
        }
        if (name == "v") {
            return Expr::variable(Var::v);
        }
        if (name == "w") {
            return Expr::variable(Var::w);
        }
        if (auto f = function_named(name)) {
            expect('(');
            auto arg = expr();
            expect(')');
            return build::call(*f, arg);
        }
        if (name == "x") {
            pos_ = start;
            fail("unknown identifier 'x' (vertex dependence is written as a coefficient, e.g. gamma(x))");
        }
        const std::size_t save = pos_;
        if (accept('(')) {
            skip_ws();
            const std::size_t arg_start = pos_;
            while (pos_ < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) {
                ++pos_;
            }
            if (src_.substr(arg_start, pos_ - arg_start) != "x") {
                pos_ = start;
                fail("unknown function '" + name + "'");
            }
            expect(')');
        } else {
            pos_ = save;
        }
        return Expr::coefficient(name);
    }

    std::string_view src_;
    std::size_t pos_ = 0;
};

} // namespace detail

inline Expr parse_expr(std::string_view source)
{
    return detail::Parser(source).parse();
}

// ---------------------------------------------------------------------------
// Structure queries and differentiation

inline bool depends_on(const Expr& e, Var v)
{
    switch (e.kind()) {
    case ExprKind::number:
    case ExprKind::coefficient: return false;
    case ExprKind::variable: return e.var() == v;
    case ExprKind::neg:
    case ExprKind::call: return depends_on(e.lhs(), v);
    default: return depends_on(e.lhs(), v) || depends_on(e.rhs(), v);
    }
}

inline void collect_coefficients(const Expr& e, std::set<std::string>& out)
{
    switch (e.kind()) {
    case ExprKind::number:
    case ExprKind::variable: return;
    case ExprKind::coefficient: out.insert(e.name()); return;
    case ExprKind::neg:
    case ExprKind::call: collect_coefficients(e.lhs(), out); return;
    default:
        collect_coefficients(e.lhs(), out);
        collect_coefficients(e.rhs(), out);
    }
}

inline std::set<std::string> coefficient_names(const Expr& e)
{
    std::set<std::string> out;
    collect_coefficients(e, out);
    return out;
}

inline bool uses_function(const Expr& e, Func f)
{
    switch (e.kind()) {
    case ExprKind::number:
    case ExprKind::variable:
    case ExprKind::coefficient: return false;
    case ExprKind::call: return e.func() == f || uses_function(e.lhs(), f);
    case ExprKind::neg: return uses_function(e.lhs(), f);
    default: return uses_function(e.lhs(), f) || uses_function(e.rhs(), f);
    }
}

inline bool uses_kind(const Expr& e, ExprKind k)
{
    if (e.kind() == k) {
        return true;
    }
    switch (e.kind()) {
    case ExprKind::number:
    case ExprKind::variable:
    case ExprKind::coefficient: return false;
    case ExprKind::call:
    case ExprKind::neg: return uses_kind(e.lhs(), k);
    default: return uses_kind(e.lhs(), k) || uses_kind(e.rhs(), k);
    }
}

/// d e / d var. abs differentiates to sign with sign(0) = 0.
inline Expr differentiate(const Expr& e, Var var)
{
    using namespace build;
    if (!depends_on(e, var)) {
        return Expr::number(0.0);
    }
    switch (e.kind()) {
    case ExprKind::variable: return Expr::number(e.var() == var ? 1.0 : 0.0);
    case ExprKind::add: return add(differentiate(e.lhs(), var), differentiate(e.rhs(), var));
    case ExprKind::sub: return sub(differentiate(e.lhs(), var), differentiate(e.rhs(), var));
    case ExprKind::neg: return neg(differentiate(e.lhs(), var));
    case ExprKind::mul:
        return add(mul(differentiate(e.lhs(), var), e.rhs()), mul(e.lhs(), differentiate(e.rhs(), var)));
    case ExprKind::div: {
        const auto a = e.lhs();
        const auto b = e.rhs();
        return div(sub(mul(differentiate(a, var), b), mul(a, differentiate(b, var))), pow(b, Expr::number(2.0)));
    }
    case ExprKind::pow: {
        const auto a = e.lhs();
        const auto b = e.rhs();
        if (!depends_on(b, var)) {
            return mul(mul(b, pow(a, sub(b, Expr::number(1.0)))), differentiate(a, var));
        }
        return mul(e, add(mul(differentiate(b, var), call(Func::log, a)), div(mul(b, differentiate(a, var)), a)));
    }
    case ExprKind::call: {
        const auto a = e.lhs();
        const auto da = differentiate(a, var);
        switch (e.func()) {
        case Func::abs: return mul(call(Func::sign, a), da);
        case Func::sign: return Expr::number(0.0);
        case Func::sqrt: return div(da, mul(Expr::number(2.0), e));
        case Func::sin: return mul(call(Func::cos, a), da);
        case Func::cos: return neg(mul(call(Func::sin, a), da));
        case Func::exp: return mul(e, da);
        case Func::log: return div(da, a);
        case Func::atan: return div(da, add(Expr::number(1.0), pow(a, Expr::number(2.0))));
        }
        break;
    }
    default: break;
    }
    return Expr::number(0.0);
}

// ---------------------------------------------------------------------------
// Compiled evaluation

/// Postfix program for fast, reentrant evaluation of an Expr.
///
/// Coefficients are bound to slots at compile time; eval() receives the
/// coefficient values of one vertex in slot order.
class CompiledExpr {
public:
    CompiledExpr() = default;

    CompiledExpr(const Expr& e, const std::vector<std::string>& slots)
    {
        int depth = 0;
        emit(e, slots, depth);
        if (max_depth_ > static_cast<int>(kStack)) {
            throw InputError("expression too deeply nested");
        }
    }

    [[nodiscard]] double eval(double u, double v, double w, std::span<const double> coefs) const
    {
        std::array<double, kStack> st{};
        std::size_t sp = 0;
        for (const auto& ins : code_) {
            switch (ins.op) {
            case Op::push: st[sp++] = ins.value; break;
            case Op::load_u: st[sp++] = u; break;
            case Op::load_v: st[sp++] = v; break;
            case Op::load_w: st[sp++] = w; break;
            case Op::load_coef: st[sp++] = coefs[ins.slot]; break;
            case Op::neg: st[sp - 1] = -st[sp - 1]; break;
            case Op::add: --sp; st[sp - 1] += st[sp]; break;
            case Op::sub: --sp; st[sp - 1] -= st[sp]; break;
            case Op::mul: --sp; st[sp - 1] *= st[sp]; break;
            case Op::div:
                --sp;
                if (st[sp] == 0.0) {
                    throw DomainError("division by zero");
                }
                st[sp - 1] /= st[sp];
                break;
            case Op::pow: {
                --sp;
                const double base = st[sp - 1];
                const double ex = st[sp];
                if (base < 0.0 && std::floor(ex) != ex) {
                    throw DomainError("negative base raised to a non-integer power");
                }
                if (base == 0.0 && ex < 0.0) {
                    throw DomainError("zero raised to a negative power");
                }
                st[sp - 1] = ex == 2.0 ? base * base : std::pow(base, ex);
                break;
            }
            case Op::call: st[sp - 1] = apply(ins.func, st[sp - 1]); break;
            }
        }
        const double r = st[0];
        if (!std::isfinite(r)) {
            throw DomainError("non-finite value");
        }
        return r;
    }

private:
    enum class Op { push, load_u, load_v, load_w, load_coef, neg, add, sub, mul, div, pow, call };
    struct Instruction {
        Op op;
        double value = 0.0;
        std::size_t slot = 0;
        Func func = Func::abs;
    };
    static constexpr std::size_t kStack = 128;

    static double apply(Func f, double a)
    {
        switch (f) {
        case Func::abs: return std::abs(a);
        case Func::sign: return a > 0.0 ? 1.0 : (a < 0.0 ? -1.0 : 0.0);
        case Func::sqrt:
            if (a < 0.0) {
                throw DomainError("sqrt of negative argument");
            }
            return std::sqrt(a);
        case Func::sin: return std::sin(a);
        case Func::cos: return std::cos(a);
        case Func::exp: return std::exp(a);
        case Func::log:
            if (a <= 0.0) {
                throw DomainError("log of non-positive argument");
            }
            return std::log(a);
        case Func::atan: return std::atan(a);
        }
        return a;
    }

    void emit(const Expr& e, const std::vector<std::string>& slots, int& depth)
    {
        auto push = [&](Instruction ins) {
            code_.push_back(ins);
            max_depth_ = std::max(max_depth_, ++depth);
        };
        switch (e.kind()) {
        case ExprKind::number: push({Op::push, e.value()}); return;
        case ExprKind::variable:
            push({e.var() == Var::u ? Op::load_u : e.var() == Var::v ? Op::load_v : Op::load_w});
            return;
        case ExprKind::coefficient: {
            const auto it = std::find(slots.begin(), slots.end(), e.name());
            if (it == slots.end()) {
                throw InputError("unknown coefficient '" + e.name() + "'");
            }
            push({Op::load_coef, 0.0, static_cast<std::size_t>(it - slots.begin())});
            return;
        }
        case ExprKind::neg:
            emit(e.lhs(), slots, depth);
            code_.push_back({Op::neg});
            return;
        case ExprKind::call:
            emit(e.lhs(), slots, depth);
            code_.push_back({Op::call, 0.0, 0, e.func()});
            return;
        default: break;
        }
        emit(e.lhs(), slots, depth);
        emit(e.rhs(), slots, depth);
        --depth;
        Op op = Op::add;
        switch (e.kind()) {
        case ExprKind::add: op = Op::add; break;
        case ExprKind::sub: op = Op::sub; break;
        case ExprKind::mul: op = Op::mul; break;
        case ExprKind::div: op = Op::div; break;
        case ExprKind::pow: op = Op::pow; break;
        default: break;
        }
        code_.push_back({op});
    }

    std::vector<Instruction> code_;
    int max_depth_ = 0;
};

} // namespace grapde
