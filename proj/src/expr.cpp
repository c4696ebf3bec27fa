#include "scalevar/expr.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <optional>
#include <utility>

#include "scalevar/error.hpp"

namespace scalevar {

struct Expr::Node {
    Op op = Op::Constant;
    cplx value{};
    std::string name;
    Variable var;
    Func func = Func::Sin;
    double exponent = 0.0;
    Expr a{std::shared_ptr<const Node>{}};
    Expr b{std::shared_ptr<const Node>{}};
};

namespace {

constexpr std::array<std::pair<std::string_view, Func>, 7> kFunctions{{
    {"sin", Func::Sin},
    {"cos", Func::Cos},
    {"exp", Func::Exp},
    {"ln", Func::Ln},
    {"sqrt", Func::Sqrt},
    {"abs2", Func::Abs2},
    {"conj", Func::Conj},
}};

std::string_view func_name(Func f) {
    for (const auto& [name, fn] : kFunctions) {
        if (fn == f) {
            return name;
        }
    }
    return "?";
}

std::optional<Func> lookup_func(std::string_view name) {
    for (const auto& [n, fn] : kFunctions) {
        if (n == name) {
            return fn;
        }
    }
    return std::nullopt;
}

bool is_integer_exponent(double p) { return std::nearbyint(p) == p && std::abs(p) <= 1024.0; }

cplx int_power(cplx z, long long n) {
    cplx result = 1.0;
    cplx base = z;
    unsigned long long e = static_cast<unsigned long long>(n < 0 ? -n : n);
    while (e != 0) {
        if (e & 1ULL) {
            result *= base;
        }
        e >>= 1;
        if (e != 0) {
            base *= base;
        }
    }
    return result;
}

// z^p with the principal branch; integer exponents by repeated squaring.
cplx power_value(cplx z, double p) {
    if (z == cplx(0.0)) {
        if (p < 0.0) {
            throw NumericalError("division by zero: 0 raised to a negative power");
        }
        return p == 0.0 ? cplx(1.0) : cplx(0.0);
    }
    if (is_integer_exponent(p)) {
        const auto n = static_cast<long long>(p);
        const cplx r = int_power(z, n);
        return n < 0 ? cplx(1.0) / r : r;
    }
    return std::pow(z, p);
}

cplx apply_func(Func f, cplx z) {
    switch (f) {
        case Func::Sin: return std::sin(z);
        case Func::Cos: return std::cos(z);
        case Func::Exp: return std::exp(z);
        case Func::Ln:
            if (z == cplx(0.0)) {
                throw NumericalError("ln(0) is undefined");
            }
            return std::log(z);
        case Func::Sqrt: return std::sqrt(z);
        case Func::Abs2: return std::norm(z);
        case Func::Conj: return std::conj(z);
    }
    return {};
}

bool finite(cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

std::string format_real(double x) {
    if (x == 0.0) {
        return "0";
    }
    std::array<char, 32> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), x);
    return std::string(buf.data(), res.ptr);
}

} // namespace

// ---------------------------------------------------------------------------
// Construction

Expr::Expr() : Expr(constant(0.0)) {}

Expr Expr::constant(cplx c) {
    auto n = std::make_shared<Node>();
    n->op = Op::Constant;
    n->value = c;
    return Expr(std::move(n));
}

Expr Expr::parameter(std::string name) {
    auto n = std::make_shared<Node>();
    n->op = Op::Parameter;
    n->name = std::move(name);
    return Expr(std::move(n));
}

Expr Expr::variable(Variable v) {
    auto n = std::make_shared<Node>();
    n->op = Op::Var;
    n->var = v;
    return Expr(std::move(n));
}

Expr Expr::binary(Op op, Expr a, Expr b) {
    auto n = std::make_shared<Node>();
    n->op = op;
    n->a = std::move(a);
    n->b = std::move(b);
    return Expr(std::move(n));
}

Expr Expr::negate(Expr a) {
    auto n = std::make_shared<Node>();
    n->op = Op::Negate;
    n->a = std::move(a);
    return Expr(std::move(n));
}

Expr Expr::call(Func f, Expr arg) {
    if (arg.is_constant()) {
        try {
            const cplx r = apply_func(f, arg.value());
            if (finite(r)) {
                return constant(r);
            }
        } catch (const NumericalError&) {
            // left unfolded; evaluation reports the error
        }
    }
    auto n = std::make_shared<Node>();
    n->op = Op::Call;
    n->func = f;
    n->a = std::move(arg);
    return Expr(std::move(n));
}

Expr Expr::power(Expr base, double exponent) {
    if (exponent == 0.0) {
        return constant(1.0);
    }
    if (exponent == 1.0) {
        return base;
    }
    if (base.is_constant()) {
        try {
            const cplx r = power_value(base.value(), exponent);
            if (finite(r)) {
                return constant(r);
            }
        } catch (const NumericalError&) {
        }
    }
    auto n = std::make_shared<Node>();
    n->op = Op::Power;
    n->exponent = exponent;
    n->a = std::move(base);
    return Expr(std::move(n));
}

Expr operator+(const Expr& a, const Expr& b) {
    if (a.is_constant() && b.is_constant()) {
        return Expr::constant(a.value() + b.value());
    }
    if (a.is_zero()) {
        return b;
    }
    if (b.is_zero()) {
        return a;
    }
    return Expr::binary(Expr::Op::Add, a, b);
}

Expr operator-(const Expr& a, const Expr& b) {
    if (a.is_constant() && b.is_constant()) {
        return Expr::constant(a.value() - b.value());
    }
    if (b.is_zero()) {
        return a;
    }
    if (a.is_zero()) {
        return -b;
    }
    return Expr::binary(Expr::Op::Subtract, a, b);
}

Expr operator*(const Expr& a, const Expr& b) {
    if (a.is_constant() && b.is_constant()) {
        return Expr::constant(a.value() * b.value());
    }
    if (a.is_zero() || b.is_zero()) {
        return Expr::constant(0.0);
    }
    if (a.is_one()) {
        return b;
    }
    if (b.is_one()) {
        return a;
    }
    if (b.is_constant()) {
        return b * a;
    }
    if (a.is_constant() && b.op() == Expr::Op::Multiply && b.lhs().is_constant()) {
        return Expr::constant(a.value() * b.lhs().value()) * b.rhs();
    }
    return Expr::binary(Expr::Op::Multiply, a, b);
}

Expr operator/(const Expr& a, const Expr& b) {
    if (a.is_constant() && b.is_constant() && !b.is_zero()) {
        return Expr::constant(a.value() / b.value());
    }
    if (b.is_one()) {
        return a;
    }
    if (a.is_zero() && !b.is_zero()) {
        return Expr::constant(0.0);
    }
    return Expr::binary(Expr::Op::Divide, a, b);
}

Expr operator-(const Expr& a) {
    if (a.is_constant()) {
        return Expr::constant(-a.value());
    }
    if (a.op() == Expr::Op::Negate) {
        return a.lhs();
    }
    return Expr::negate(a);
}

// ---------------------------------------------------------------------------
// Accessors

Expr::Op Expr::op() const noexcept { return node_->op; }
cplx Expr::value() const { return node_->value; }
const std::string& Expr::name() const { return node_->name; }
Variable Expr::var() const { return node_->var; }
Func Expr::func() const { return node_->func; }
double Expr::exponent() const { return node_->exponent; }
const Expr& Expr::lhs() const { return node_->a; }
const Expr& Expr::rhs() const { return node_->b; }

bool Expr::is_zero() const noexcept { return node_->op == Op::Constant && node_->value == cplx(0.0); }
bool Expr::is_one() const noexcept { return node_->op == Op::Constant && node_->value == cplx(1.0); }

bool operator==(const Expr& a, const Expr& b) {
    if (a.node_ == b.node_) {
        return true;
    }
    if (a.op() != b.op()) {
        return false;
    }
    switch (a.op()) {
        case Expr::Op::Constant: return a.value() == b.value();
        case Expr::Op::Parameter: return a.name() == b.name();
        case Expr::Op::Var: return a.var() == b.var();
        case Expr::Op::Negate: return a.lhs() == b.lhs();
        case Expr::Op::Power: return a.exponent() == b.exponent() && a.lhs() == b.lhs();
        case Expr::Op::Call: return a.func() == b.func() && a.lhs() == b.lhs();
        default: return a.lhs() == b.lhs() && a.rhs() == b.rhs();
    }
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

enum class Tok { Number, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, End };

struct Token {
    Tok kind = Tok::End;
    std::string_view text;
    double number = 0.0;
    std::size_t column = 1;
};

bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool is_ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }
bool is_digit(char c) { return c >= '0' && c <= '9'; }

// Parses "q12" / "v3" into a kind and 1-based index.
std::optional<std::pair<VarKind, std::size_t>> indexed_variable(std::string_view id) {
    if (id.size() < 2 || (id[0] != 'q' && id[0] != 'v')) {
        return std::nullopt;
    }
    std::size_t idx = 0;
    const auto res = std::from_chars(id.data() + 1, id.data() + id.size(), idx);
    if (res.ec != std::errc{} || res.ptr != id.data() + id.size()) {
        return std::nullopt;
    }
    return std::pair{id[0] == 'q' ? VarKind::Position : VarKind::Velocity, idx};
}

bool is_reserved(std::string_view id) {
    return id == "i" || id == "t" || lookup_func(id).has_value() || indexed_variable(id).has_value();
}

class Parser {
public:
    Parser(std::string_view text, std::size_t dim, const std::set<std::string, std::less<>>& params)
        : text_(text), dim_(dim), params_(params) {
        advance();
    }

    Expr parse_all() {
        if (tok_.kind == Tok::End) {
            throw ParseError("empty expression", 1);
        }
        Expr e = expr();
        if (tok_.kind != Tok::End) {
            throw ParseError("unexpected '" + std::string(tok_.text) + "'", tok_.column);
        }
        return e;
    }

private:
    void advance() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
            ++pos_;
        }
        tok_ = Token{};
        tok_.column = pos_ + 1;
        if (pos_ >= text_.size()) {
            tok_.kind = Tok::End;
            tok_.text = "end of input";
            return;
        }
        const char c = text_[pos_];
        const std::size_t start = pos_;
        if (is_digit(c) || (c == '.' && pos_ + 1 < text_.size() && is_digit(text_[pos_ + 1]))) {
            while (pos_ < text_.size() && (is_digit(text_[pos_]) || text_[pos_] == '.')) {
                ++pos_;
            }
            if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
                std::size_t p = pos_ + 1;
                if (p < text_.size() && (text_[p] == '+' || text_[p] == '-')) {
                    ++p;
                }
                if (p < text_.size() && is_digit(text_[p])) {
                    pos_ = p;
                    while (pos_ < text_.size() && is_digit(text_[pos_])) {
                        ++pos_;
                    }
                }
            }
            tok_.kind = Tok::Number;
            tok_.text = text_.substr(start, pos_ - start);
            const auto res = std::from_chars(tok_.text.data(), tok_.text.data() + tok_.text.size(), tok_.number);
            if (res.ec != std::errc{} || res.ptr != tok_.text.data() + tok_.text.size()) {
                throw ParseError("malformed number '" + std::string(tok_.text) + "'", tok_.column);
            }
            return;
        }
        if (is_ident_start(c)) {
            while (pos_ < text_.size() && is_ident_char(text_[pos_])) {
                ++pos_;
            }
            tok_.kind = Tok::Ident;
            tok_.text = text_.substr(start, pos_ - start);
            return;
        }
        ++pos_;
        tok_.text = text_.substr(start, 1);
        switch (c) {
            case '+': tok_.kind = Tok::Plus; return;
            case '-': tok_.kind = Tok::Minus; return;
            case '*': tok_.kind = Tok::Star; return;
            case '/': tok_.kind = Tok::Slash; return;
            case '^': tok_.kind = Tok::Caret; return;
            case '(': tok_.kind = Tok::LParen; return;
            case ')': tok_.kind = Tok::RParen; return;
            default: throw ParseError("unexpected character '" + std::string(1, c) + "'", start + 1);
        }
    }

    Expr expr() {
        Expr lhs = term();
        while (tok_.kind == Tok::Plus || tok_.kind == Tok::Minus) {
            const bool plus = tok_.kind == Tok::Plus;
            advance();
            Expr rhs = term();
            lhs = plus ? lhs + rhs : lhs - rhs;
        }
        return lhs;
    }

    Expr term() {
        Expr lhs = unary();
        while (tok_.kind == Tok::Star || tok_.kind == Tok::Slash) {
            const bool mul = tok_.kind == Tok::Star;
            advance();
            Expr rhs = unary();
            lhs = mul ? lhs * rhs : lhs / rhs;
        }
        return lhs;
    }

    Expr unary() {
        if (tok_.kind == Tok::Minus) {
            advance();
            return -unary();
        }
        return power();
    }

    Expr power() {
        Expr base = primary();
        if (tok_.kind == Tok::Caret) {
            advance();
            const std::size_t col = tok_.column;
            Expr ex = unary();
            if (!ex.is_constant() || ex.value().imag() != 0.0) {
                throw ParseError("exponent must be a real constant", col);
            }
            return Expr::power(base, ex.value().real());
        }
        return base;
    }

    Expr primary() {
        const Token tok = tok_;
        switch (tok.kind) {
            case Tok::Number:
                advance();
                return Expr::constant(tok.number);
            case Tok::LParen: {
                advance();
                Expr e = expr();
                expect(Tok::RParen, "')'");
                return e;
            }
            case Tok::Ident:
                advance();
                return identifier(tok);
            case Tok::End:
                throw ParseError("unexpected end of input", tok.column);
            default:
                throw ParseError("unexpected '" + std::string(tok.text) + "'", tok.column);
        }
    }

    Expr identifier(const Token& tok) {
        const std::string_view id = tok.text;
        if (const auto f = lookup_func(id)) {
            if (tok_.kind != Tok::LParen) {
                throw ParseError("expected '(' after function '" + std::string(id) + "'", tok_.column);
            }
            advance();
            Expr arg = expr();
            expect(Tok::RParen, "')'");
            return Expr::call(*f, arg);
        }
        if (id == "i") {
            return Expr::constant(kI);
        }
        if (id == "t") {
            return Expr::variable(Variable::time());
        }
        if (const auto iv = indexed_variable(id)) {
            const auto [kind, idx] = *iv;
            if (idx < 1 || idx > dim_) {
                throw ParseError("index out of range: " + std::string(id) + " (dimension " + std::to_string(dim_) + ")",
                                 tok.column);
            }
            return Expr::variable(Variable{kind, idx - 1});
        }
        if (params_.contains(id)) {
            return Expr::parameter(std::string(id));
        }
        throw ParseError("unknown identifier '" + std::string(id) + "'", tok.column);
    }

    void expect(Tok kind, const char* what) {
        if (tok_.kind != kind) {
            throw ParseError(std::string("expected ") + what + ", found '" + std::string(tok_.text) + "'", tok_.column);
        }
        advance();
    }

    std::string_view text_;
    std::size_t dim_;
    const std::set<std::string, std::less<>>& params_;
    std::size_t pos_ = 0;
    Token tok_;
};

} // namespace

Expr parse(std::string_view text, std::size_t dim, const std::set<std::string, std::less<>>& params) {
    for (const auto& p : params) {
        if (p.empty() || !is_ident_start(p.front()) || is_reserved(p)) {
            throw ValidationError("invalid or reserved parameter name '" + p + "'");
        }
        for (char c : p) {
            if (!is_ident_char(c)) {
                throw ValidationError("invalid parameter name '" + p + "'");
            }
        }
    }
    return Parser(text, dim, params).parse_all();
}

Expr parse(std::string_view text, std::size_t dim, const ParamMap& params) {
    std::set<std::string, std::less<>> names;
    for (const auto& [k, v] : params) {
        names.insert(k);
    }
    return parse(text, dim, names);
}

// ---------------------------------------------------------------------------
// Printing

namespace {

constexpr int kPrecAdd = 1;
constexpr int kPrecMul = 2;
constexpr int kPrecUnary = 3;
constexpr int kPrecPow = 4;
constexpr int kPrecAtom = 5;

struct Printed {
    std::string text;
    int prec;
};

Printed print_constant(cplx c) {
    const double re = c.real();
    const double im = c.imag();
    if (im == 0.0) {
        if (re < 0.0) {
            return {"-" + format_real(-re), kPrecUnary};
        }
        return {format_real(re), kPrecAtom};
    }
    const auto imag_term = [](double mag) { return mag == 1.0 ? std::string("i") : format_real(mag) + "*i"; };
    if (re == 0.0) {
        if (im == 1.0) {
            return {"i", kPrecAtom};
        }
        if (im == -1.0) {
            return {"-i", kPrecUnary};
        }
        return {(im < 0.0 ? "-" : "") + imag_term(std::abs(im)), kPrecMul};
    }
    const std::string real_text = re < 0.0 ? "-" + format_real(-re) : format_real(re);
    return {"(" + real_text + (im < 0.0 ? "-" : "+") + imag_term(std::abs(im)) + ")", kPrecAtom};
}

Printed print_node(const Expr& e);

std::string wrap(const Expr& e, int min_prec) {
    Printed p = print_node(e);
    return p.prec < min_prec ? "(" + p.text + ")" : p.text;
}

Printed print_node(const Expr& e) {
    switch (e.op()) {
        case Expr::Op::Constant: return print_constant(e.value());
        case Expr::Op::Parameter: return {e.name(), kPrecAtom};
        case Expr::Op::Var: return {to_string(e.var()), kPrecAtom};
        case Expr::Op::Negate: return {"-" + wrap(e.lhs(), kPrecUnary), kPrecUnary};
        case Expr::Op::Add: return {wrap(e.lhs(), kPrecAdd) + " + " + wrap(e.rhs(), kPrecMul), kPrecAdd};
        case Expr::Op::Subtract: return {wrap(e.lhs(), kPrecAdd) + " - " + wrap(e.rhs(), kPrecMul), kPrecAdd};
        case Expr::Op::Multiply: return {wrap(e.lhs(), kPrecMul) + "*" + wrap(e.rhs(), kPrecUnary), kPrecMul};
        case Expr::Op::Divide: return {wrap(e.lhs(), kPrecMul) + "/" + wrap(e.rhs(), kPrecUnary), kPrecMul};
        case Expr::Op::Power:
            return {wrap(e.lhs(), kPrecAtom) + "^" + print_constant(e.exponent()).text, kPrecPow};
        case Expr::Op::Call:
            return {std::string(func_name(e.func())) + "(" + print_node(e.lhs()).text + ")", kPrecAtom};
    }
    return {"?", kPrecAtom};
}

} // namespace

std::string print(const Expr& e) { return print_node(e).text; }

std::string to_string(Variable v) {
    switch (v.kind) {
        case VarKind::Time: return "t";
        case VarKind::Position: return "q" + std::to_string(v.index + 1);
        case VarKind::Velocity: return "v" + std::to_string(v.index + 1);
    }
    return "?";
}

// ---------------------------------------------------------------------------
// Evaluation

cplx eval(const Expr& e, const Bindings& b) {
    switch (e.op()) {
        case Expr::Op::Constant: return e.value();
        case Expr::Op::Parameter: {
            if (b.params != nullptr) {
                if (const auto it = b.params->find(e.name()); it != b.params->end()) {
                    return it->second;
                }
            }
            throw ValidationError("unbound parameter '" + e.name() + "'");
        }
        case Expr::Op::Var: {
            const Variable v = e.var();
            if (v.kind == VarKind::Time) {
                return b.t;
            }
            const auto& vals = v.kind == VarKind::Position ? b.q : b.v;
            if (v.index >= vals.size()) {
                throw ValidationError("variable " + to_string(v) + " not bound");
            }
            return vals[v.index];
        }
        case Expr::Op::Negate: return -eval(e.lhs(), b);
        case Expr::Op::Add: return eval(e.lhs(), b) + eval(e.rhs(), b);
        case Expr::Op::Subtract: return eval(e.lhs(), b) - eval(e.rhs(), b);
        case Expr::Op::Multiply: return eval(e.lhs(), b) * eval(e.rhs(), b);
        case Expr::Op::Divide: {
            const cplx den = eval(e.rhs(), b);
            if (den == cplx(0.0)) {
                throw NumericalError("division by zero");
            }
            return eval(e.lhs(), b) / den;
        }
        case Expr::Op::Power: return power_value(eval(e.lhs(), b), e.exponent());
        case Expr::Op::Call: return apply_func(e.func(), eval(e.lhs(), b));
    }
    return {};
}

// ---------------------------------------------------------------------------
// Differentiation

Expr diff(const Expr& e, Variable x) {
    using Op = Expr::Op;
    switch (e.op()) {
        case Op::Constant:
        case Op::Parameter: return Expr::constant(0.0);
        case Op::Var: {
            const Variable v = e.var();
            const bool same = v.kind == x.kind && (v.kind == VarKind::Time || v.index == x.index);
            return Expr::constant(same ? 1.0 : 0.0);
        }
        case Op::Negate: return -diff(e.lhs(), x);
        case Op::Add: return diff(e.lhs(), x) + diff(e.rhs(), x);
        case Op::Subtract: return diff(e.lhs(), x) - diff(e.rhs(), x);
        case Op::Multiply: return diff(e.lhs(), x) * e.rhs() + e.lhs() * diff(e.rhs(), x);
        case Op::Divide: {
            const Expr& u = e.lhs();
            const Expr& w = e.rhs();
            const Expr du = diff(u, x);
            const Expr dw = diff(w, x);
            if (dw.is_zero()) {
                return du / w;
            }
            return (du * w - u * dw) / Expr::power(w, 2.0);
        }
        case Op::Power: {
            const double p = e.exponent();
            return Expr::constant(p) * Expr::power(e.lhs(), p - 1.0) * diff(e.lhs(), x);
        }
        case Op::Call: {
            const Expr& u = e.lhs();
            const Expr du = diff(u, x);
            switch (e.func()) {
                case Func::Sin: return Expr::call(Func::Cos, u) * du;
                case Func::Cos: return -Expr::call(Func::Sin, u) * du;
                case Func::Exp: return Expr::call(Func::Exp, u) * du;
                case Func::Ln: return du / u;
                case Func::Sqrt: return du / (Expr::constant(2.0) * Expr::call(Func::Sqrt, u));
                case Func::Abs2:
                case Func::Conj: {
                    if (du.is_zero()) {
                        return Expr::constant(0.0);
                    }
                    if (x.kind != VarKind::Time) {
                        throw ValidationError(std::string(func_name(e.func())) +
                                              " is not complex-differentiable with respect to " + to_string(x));
                    }
                    if (e.func() == Func::Conj) {
                        return Expr::call(Func::Conj, du);
                    }
                    return u * Expr::call(Func::Conj, du) + Expr::call(Func::Conj, u) * du;
                }
            }
        }
    }
    return Expr::constant(0.0);
}

bool depends_on(const Expr& e, VarKind kind) {
    switch (e.op()) {
        case Expr::Op::Constant:
        case Expr::Op::Parameter: return false;
        case Expr::Op::Var: return e.var().kind == kind;
        case Expr::Op::Negate:
        case Expr::Op::Power:
        case Expr::Op::Call: return depends_on(e.lhs(), kind);
        default: return depends_on(e.lhs(), kind) || depends_on(e.rhs(), kind);
    }
}

bool depends_on(const Expr& e, Variable x) {
    switch (e.op()) {
        case Expr::Op::Constant:
        case Expr::Op::Parameter: return false;
        case Expr::Op::Var:
            return e.var().kind == x.kind && (x.kind == VarKind::Time || e.var().index == x.index);
        case Expr::Op::Negate:
        case Expr::Op::Power:
        case Expr::Op::Call: return depends_on(e.lhs(), x);
        default: return depends_on(e.lhs(), x) || depends_on(e.rhs(), x);
    }
}

std::size_t max_index(const Expr& e) {
    switch (e.op()) {
        case Expr::Op::Constant:
        case Expr::Op::Parameter: return 0;
        case Expr::Op::Var: return e.var().kind == VarKind::Time ? 0 : e.var().index + 1;
        case Expr::Op::Negate:
        case Expr::Op::Power:
        case Expr::Op::Call: return max_index(e.lhs());
        default: return std::max(max_index(e.lhs()), max_index(e.rhs()));
    }
}

} // namespace scalevar
