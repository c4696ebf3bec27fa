#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "scalevar/types.hpp"

namespace scalevar {

using ParamMap = std::map<std::string, cplx, std::less<>>;

enum class VarKind { Time, Position, Velocity };

/// A variable of the DSL: `t`, `q<k>` or `v<k>`. `index` is 0-based
/// (q1 has index 0) and ignored for Time.
struct Variable {
    VarKind kind = VarKind::Time;
    std::size_t index = 0;

    static Variable time() { return {VarKind::Time, 0}; }
    static Variable position(std::size_t k) { return {VarKind::Position, k}; }
    static Variable velocity(std::size_t k) { return {VarKind::Velocity, k}; }

    bool operator==(const Variable&) const = default;
};

enum class Func { Sin, Cos, Exp, Ln, Sqrt, Abs2, Conj };

/// Values bound to the free symbols of an expression during evaluation.
struct Bindings {
    double t = 0.0;
    std::span<const cplx> q;
    std::span<const cplx> v;
    const ParamMap* params = nullptr;
};

/// Immutable expression tree. Construction through the factory functions and
/// operators folds constants and applies the 0/1 identities, so parse, diff
/// and hand-built trees share a canonical shape.
class Expr {
public:
    enum class Op { Constant, Parameter, Var, Negate, Add, Subtract, Multiply, Divide, Power, Call };

    Expr();  // the constant 0

    static Expr constant(cplx c);
    static Expr parameter(std::string name);
    static Expr variable(Variable v);
    static Expr call(Func f, Expr arg);
    /// u^p with a real exponent.
    static Expr power(Expr base, double exponent);

    Op op() const noexcept;
    cplx value() const;                // Constant
    const std::string& name() const;   // Parameter
    Variable var() const;              // Var
    Func func() const;                 // Call
    double exponent() const;           // Power
    const Expr& lhs() const;           // unary operand or left operand
    const Expr& rhs() const;           // right operand

    bool is_constant() const noexcept { return op() == Op::Constant; }
    bool is_zero() const noexcept;
    bool is_one() const noexcept;

    /// Structural equality.
    friend bool operator==(const Expr& a, const Expr& b);

    friend Expr operator+(const Expr& a, const Expr& b);
    friend Expr operator-(const Expr& a, const Expr& b);
    friend Expr operator*(const Expr& a, const Expr& b);
    friend Expr operator/(const Expr& a, const Expr& b);
    friend Expr operator-(const Expr& a);

private:
    struct Node;
    explicit Expr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
    static Expr binary(Op op, Expr a, Expr b);
    static Expr negate(Expr a);
    std::shared_ptr<const Node> node_;
};

/// Parses expression text. `dim` bounds the q/v indices; `params` lists the
/// admitted parameter names. Grammar (whitespace insensitive):
///
///   expr    := term (('+' | '-') term)*
///   term    := unary (('*' | '/') unary)*
///   unary   := '-' unary | power
///   power   := primary ('^' unary)?          right associative
///   primary := number | 'i' | 't' | 'q'k | 'v'k | param
///            | func '(' expr ')' | '(' expr ')'
///   func    := sin | cos | exp | ln | sqrt | abs2 | conj
///
/// Exponents must reduce to real constants. Errors are ParseError with a
/// 1-based column.
Expr parse(std::string_view text, std::size_t dim, const std::set<std::string, std::less<>>& params = {});

/// Convenience overload taking the parameter names from a ParamMap.
Expr parse(std::string_view text, std::size_t dim, const ParamMap& params);

/// Prints with minimal parentheses; parse(print(e)) == e for trees built by
/// parse or by the Expr factories.
std::string print(const Expr& e);

/// Complex evaluation with principal branches for ln, sqrt and non-integer
/// powers. Throws ValidationError on unbound names or out-of-range indices and
/// NumericalError on division by zero or ln(0).
cplx eval(const Expr& e, const Bindings& b);

/// Exact symbolic derivative. Differentiating abs2/conj through a complex
/// variable (q or v) is rejected with ValidationError.
Expr diff(const Expr& e, Variable x);

/// True if e mentions the variable kind (any index).
bool depends_on(const Expr& e, VarKind kind);
bool depends_on(const Expr& e, Variable x);

/// Highest q/v index referenced plus one (0 when none).
std::size_t max_index(const Expr& e);

std::string to_string(Variable v);

} // namespace scalevar
