#include <doctest.h>

#include "scalevar/error.hpp"
#include "scalevar/expr.hpp"
#include "corpus.hpp"
#include "support.hpp"

using namespace scalevar;
using scalevar::testing::Gen;
using scalevar::testing::kCorpus;

namespace {

// Random expression over t, q1, q2, v1, v2.
Expr random_expr(Gen& g, int depth) {
    if (depth == 0 || g.integer(0, 4) == 0) {
        switch (g.integer(0, 5)) {
        case 0: return Expr::constant(cplx(g.integer(1, 5), g.coin() ? 0 : g.integer(-2, 2)));
        case 1: return Expr::variable(Variable::time());
        case 2: return Expr::variable(Variable::position(static_cast<std::size_t>(g.integer(0, 1))));
        case 3: return Expr::variable(Variable::velocity(static_cast<std::size_t>(g.integer(0, 1))));
        case 4: return Expr::constant(g.uniform(0.5, 2));
        default: return Expr::parameter("k");
        }
    }
    const Expr a = random_expr(g, depth - 1);
    switch (g.integer(0, 7)) {
    case 0: return a + random_expr(g, depth - 1);
    case 1: return a - random_expr(g, depth - 1);
    case 2: return a * random_expr(g, depth - 1);
    case 3: return a / (Expr::constant(3.0) + random_expr(g, depth - 1));
    case 4: return Expr::power(a, g.integer(-2, 3));
    case 5: return -a;
    case 6: return Expr::call(g.pick(std::vector<Func>{Func::Sin, Func::Cos, Func::Exp}), a);
    default: return Expr::call(g.pick(std::vector<Func>{Func::Ln, Func::Sqrt}), Expr::constant(4.0) + a);
    }
}

const ParamMap kParams{{"k", cplx(1.5, 0.25)}};

struct Point {
    double t;
    CVec q, v;
};

cplx at(const Expr& e, const Point& p) {
    Bindings b;
    b.t = p.t;
    b.q = p.q;
    b.v = p.v;
    b.params = &kParams;
    return eval(e, b);
}

// Central difference along the real axis of x.
cplx central(const Expr& e, const Point& p, Variable x, double h) {
    Point lo = p, hi = p;
    switch (x.kind) {
    case VarKind::Time: lo.t -= h; hi.t += h; break;
    case VarKind::Position: lo.q[x.index] -= h; hi.q[x.index] += h; break;
    case VarKind::Velocity: lo.v[x.index] -= h; hi.v[x.index] += h; break;
    }
    return (at(e, hi) - at(e, lo)) / (2 * h);
}

const Variable kVars[] = {Variable::time(), Variable::position(0), Variable::position(1), Variable::velocity(0),
                          Variable::velocity(1)};

} // namespace

TEST_CASE("grammar examples") {
    CHECK_NOTHROW(parse("0.5*m*v1^2 - U", 1, std::set<std::string, std::less<>>{"m", "U"}));
    const Expr e = parse("sin(t)*q1 + i*v1", 1);
    CHECK(e.op() == Expr::Op::Add);
    CHECK_THROWS_WITH_AS(parse("q3", 2), doctest::Contains("index out of range"), ParseError);
    CHECK_THROWS_WITH_AS(parse("q1 + foo", 1), doctest::Contains("column 6"), ParseError);
    CHECK_THROWS_AS(parse("(q1 + 1", 1), ParseError);
    CHECK_THROWS_AS(parse("q1^v1", 1), ParseError);
    CHECK_THROWS_AS(parse("", 1), ParseError);
    CHECK_THROWS_AS(parse("1e", 1), ParseError);
    CHECK_THROWS_AS(parse("q1", 1, std::set<std::string, std::less<>>{"t"}), ValidationError);
    CHECK(parse("2.5e-1", 1).value() == cplx(0.25));
}

TEST_CASE("evaluation examples") {
    const CVec one_plus_i{cplx(1, 1)};
    Bindings b;
    b.v = one_plus_i;
    CHECK(eval(parse("v1^2", 1), b) == cplx(0, 2));
    b.t = kPi;
    CHECK(std::abs(eval(parse("exp(i*t)", 1), b) + 1.0) < 1e-15);
    const CVec z{cplx(3, 4)};
    b.q = z;
    CHECK(eval(parse("abs2(q1)", 1), b) == cplx(25));
    CHECK(eval(parse("conj(q1)", 1), b) == cplx(3, -4));
    CHECK_THROWS_AS(eval(parse("1/(q1 - q1)", 1), b), NumericalError);
    CHECK_THROWS_AS(eval(parse("k*t", 1, std::set<std::string, std::less<>>{"k"}), b), ValidationError);
}

TEST_CASE("symbolic derivative examples") {
    CHECK(diff(parse("0.5*v1^2", 1), Variable::velocity(0)) == parse("v1", 1));
    CHECK(diff(parse("sin(t)*q1", 1), Variable::time()) == parse("cos(t)*q1", 1));
    CHECK(print(diff(parse("sin(t)*q1", 1), Variable::time())) == "cos(t)*q1");
    CHECK(diff(parse("q1^3", 1), Variable::velocity(0)).is_zero());
    CHECK_THROWS_AS(diff(parse("abs2(q1)", 1), Variable::position(0)), ValidationError);
    CHECK_NOTHROW(diff(parse("abs2(t + i*t)", 1), Variable::time()));
}

TEST_CASE("constant folding and identities") {
    CHECK(parse("2*3 + 1", 1) == Expr::constant(7.0));
    CHECK(parse("0*q1 + v1*1", 1) == parse("v1", 1));
    CHECK(parse("q1^1", 1) == parse("q1", 1));
    CHECK(parse("q1^0", 1).is_one());
    CHECK(print(parse("2*(3*q1)", 1)) == "6*q1");
    CHECK(print(Expr::constant(cplx(1, -2))) == "(1-2*i)");
}

TEST_CASE("gradient check on the corpus") {
    REQUIRE(kCorpus.size() == 20);
    Gen gen(8);
    for (const std::string& text : kCorpus) {
        const Expr e = parse(text, 2, kParams);
        for (int trial = 0; trial < 5; ++trial) {
            const Point p{gen.uniform(0.1, 0.9), {gen.uniform(0.5, 1.5), gen.uniform(0.5, 1.5)},
                          {gen.uniform(0.5, 1.5), gen.uniform(0.5, 1.5)}};
            for (Variable x : kVars) {
                if ((text.find("abs2") != std::string::npos || text.find("conj") != std::string::npos) &&
                    x.kind != VarKind::Time && depends_on(e, x)) {
                    continue;
                }
                const cplx exact = at(diff(e, x), p);
                const cplx approx = central(e, p, x, 1e-5);
                INFO(text, " d/d", to_string(x));
                CHECK(std::abs(exact - approx) <= 1e-6 * std::max(1.0, std::abs(exact)));
            }
        }
    }
}

TEST_CASE("print/parse idempotence") {
    for (const std::string& text : kCorpus) {
        const Expr e = parse(text, 2, kParams);
        const Expr again = parse(print(e), 2, kParams);
        INFO(text, " -> ", print(e));
        CHECK(again == e);
        CHECK(print(again) == print(e));
    }
    Gen gen(123);
    for (int i = 0; i < 300; ++i) {
        const Expr e = random_expr(gen, 4);
        const Expr again = parse(print(e), 2, kParams);
        INFO(print(e));
        CHECK(again == e);
        for (Variable x : kVars) {
            const Expr d = diff(e, x);
            CHECK(parse(print(d), 2, kParams) == d);
        }
    }
}

TEST_CASE("random gradient check") {
    Gen gen(99);
    int checked = 0;
    for (int i = 0; i < 300; ++i) {
        const Expr e = random_expr(gen, 3);
        const Point p{gen.uniform(0.1, 0.9), {gen.uniform(0.5, 1.5), gen.uniform(0.5, 1.5)},
                      {gen.uniform(0.5, 1.5), gen.uniform(0.5, 1.5)}};
        for (Variable x : kVars) {
            cplx exact, approx;
            try {
                exact = at(diff(e, x), p);
                approx = central(e, p, x, 1e-5);
            } catch (const NumericalError&) {
                continue;
            }
            if (!std::isfinite(std::abs(exact)) || std::abs(exact) > 1e6) {
                continue;
            }
            INFO(print(e), " d/d", to_string(x));
            CHECK(std::abs(exact - approx) <= 1e-5 * std::max(1.0, std::abs(exact)));
            ++checked;
        }
    }
    CHECK(checked > 1000);
}

TEST_CASE("differentiation is linear") {
    Gen gen(4);
    for (int i = 0; i < 200; ++i) {
        const Expr a = Expr::constant(gen.complex(3));
        const Expr e1 = random_expr(gen, 3);
        const Expr e2 = random_expr(gen, 3);
        for (Variable x : kVars) {
            const Expr lhs = diff(a * e1 + e2, x);
            const Expr rhs = a * diff(e1, x) + diff(e2, x);
            INFO(print(e1), " | ", print(e2));
            CHECK(lhs == rhs);
        }
    }
}

TEST_CASE("dependency queries") {
    const Expr e = parse("t*q2 + v1", 2);
    CHECK(depends_on(e, VarKind::Time));
    CHECK(depends_on(e, Variable::position(1)));
    CHECK_FALSE(depends_on(e, Variable::position(0)));
    CHECK(max_index(e) == 2);
    CHECK(to_string(Variable::velocity(2)) == "v3");
}
