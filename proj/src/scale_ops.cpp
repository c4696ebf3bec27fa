#include "scalevar/scale_ops.hpp"

#include <cmath>
#include <utility>

#include "scalevar/error.hpp"
#include "scalevar/parallel.hpp"

namespace scalevar {

cplx mu_value(Mu mu) noexcept {
    switch (mu) {
        case Mu::One: return 1.0;
        case Mu::MinusOne: return -1.0;
        case Mu::Zero: return 0.0;
        case Mu::I: return kI;
        case Mu::MinusI: return -kI;
    }
    return 0.0;
}

Mu parse_mu(std::string_view text) {
    if (text == "1") return Mu::One;
    if (text == "-1") return Mu::MinusOne;
    if (text == "0") return Mu::Zero;
    if (text == "i") return Mu::I;
    if (text == "-i") return Mu::MinusI;
    throw ValidationError("mu must be one of \"1\", \"-1\", \"0\", \"i\", \"-i\" (got \"" + std::string(text) + "\")");
}

std::string to_string(Mu mu) {
    switch (mu) {
        case Mu::One: return "1";
        case Mu::MinusOne: return "-1";
        case Mu::Zero: return "0";
        case Mu::I: return "i";
        case Mu::MinusI: return "-i";
    }
    return "?";
}

ScaleParams::ScaleParams(double epsilon, Mu mu) : epsilon_(epsilon), mu_(mu) {
    if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
        throw ValidationError("epsilon must be positive and finite");
    }
}

// iμ is one of {i, -i, 0, -1, 1}
cplx ScaleParams::forward_weight() const noexcept { return (1.0 + kI * mu_value(mu_)) * 0.5; }
cplx ScaleParams::backward_weight() const noexcept { return (1.0 - kI * mu_value(mu_)) * 0.5; }

namespace {

struct Stencil {
    CVec minus;
    CVec center;
    CVec plus;
};

void check_epsilon(const Path& p, double eps) {
    if (!(eps > 0.0) || !std::isfinite(eps)) {
        throw ValidationError("epsilon must be positive and finite");
    }
    if (p.is_sampled()) {
        p.grid().steps_for(eps);
    }
}

CVec eval_shifted(const Path& p, double t, double eps, double sign) {
    const double s = t + sign * eps;
    if (!p.is_sampled() && !p.domain().contains(s)) {
        throw ValidationError("stencil t " + std::string(sign > 0 ? "+" : "-") + " epsilon = " + std::to_string(s) +
                              " leaves the domain of path '" + p.label() + "'");
    }
    return p(s);
}

Stencil make_stencil(const Path& p, double eps, double t, bool need_minus, bool need_plus) {
    check_epsilon(p, eps);
    Stencil s;
    s.center = p(t);
    if (need_minus) {
        s.minus = eval_shifted(p, t, eps, -1.0);
    }
    if (need_plus) {
        s.plus = eval_shifted(p, t, eps, 1.0);
    }
    return s;
}

CVec forward_quotient(const Stencil& s, double eps) {
    CVec out(s.center.size());
    for (std::size_t k = 0; k < out.size(); ++k) {
        out[k] = (s.plus[k] - s.center[k]) / eps;
    }
    return out;
}

CVec backward_quotient(const Stencil& s, double eps) {
    CVec out(s.center.size());
    for (std::size_t k = 0; k < out.size(); ++k) {
        out[k] = (s.center[k] - s.minus[k]) / eps;
    }
    return out;
}

CVec combine(const CVec& fwd, const CVec& bwd, const ScaleParams& sp) {
    const cplx cp = sp.forward_weight();
    const cplx cm = sp.backward_weight();
    CVec out(fwd.size());
    for (std::size_t k = 0; k < out.size(); ++k) {
        // Re and Im weighted separately
        const cplx re = cp * fwd[k].real() + cm * bwd[k].real();
        const cplx im = cp * fwd[k].imag() + cm * bwd[k].imag();
        out[k] = re + cplx(-im.imag(), im.real());
    }
    return out;
}

void check_padding(const TimeGrid& grid, double eps) {
    if (grid.pad() < eps * (1.0 - 1e-9)) {
        throw ValidationError("grid padding " + std::to_string(grid.pad()) + " is smaller than epsilon " +
                              std::to_string(eps));
    }
}

} // namespace

CVec delta(const Path& p, double epsilon, Side sigma, double t) {
    const bool fwd = sigma == Side::Forward;
    const Stencil s = make_stencil(p, epsilon, t, !fwd, fwd);
    return fwd ? forward_quotient(s, epsilon) : backward_quotient(s, epsilon);
}

CVec scale_derivative(const Path& p, const ScaleParams& sp, double t) {
    const double eps = sp.epsilon();
    const Stencil s = make_stencil(p, eps, t, true, true);
    return combine(forward_quotient(s, eps), backward_quotient(s, eps), sp);
}

Path scale_derivative_path(const Path& p, const ScaleParams& sp, const TimeGrid& grid) {
    check_padding(grid, sp.epsilon());
    if (p.is_sampled() && !(p.grid() == grid)) {
        throw ValidationError("scale_derivative_path: path is sampled on a different grid");
    }
    check_epsilon(p, sp.epsilon());
    const TimeGrid out_grid = grid.with_pad_steps(0);
    const std::size_t d = p.dim();
    const std::size_t first = grid.first_interior();
    std::vector<cplx> values(out_grid.size() * d);
    parallel_for(out_grid.size(), [&](std::size_t k) {
        const CVec v = scale_derivative(p, sp, grid.node(first + k));
        std::copy(v.begin(), v.end(), values.begin() + static_cast<std::ptrdiff_t>(k * d));
    });
    return Path::sampled(out_grid, d, std::move(values), "box " + p.label());
}

Path scale_derivative_path(const Path& p, const ScaleParams& sp) { return scale_derivative_path(p, sp, p.grid()); }

std::vector<double> default_epsilon_sweep() {
    std::vector<double> eps;
    for (int k = 0; k <= 10; ++k) {
        eps.push_back(std::ldexp(1e-2, -k));
    }
    return eps;
}

ExtrapolationReport quantum_derivative(const Path& p, Mu mu, std::span<const double> epsilons, double tolerance,
                                       double t, std::size_t component) {
    if (epsilons.size() < 4) {
        throw ValidationError("quantum_derivative: need at least 4 epsilons");
    }
    for (std::size_t i = 0; i < epsilons.size(); ++i) {
        if (!(epsilons[i] > 0.0) || (i > 0 && !(epsilons[i] < epsilons[i - 1]))) {
            throw ValidationError("quantum_derivative: epsilons must be positive and strictly decreasing");
        }
    }
    if (component >= p.dim()) {
        throw ValidationError("quantum_derivative: component out of range");
    }
    if (!(tolerance > 0.0)) {
        throw ValidationError("quantum_derivative: tolerance must be positive");
    }

    ExtrapolationReport rep;
    rep.epsilons.assign(epsilons.begin(), epsilons.end());
    rep.tolerance = tolerance;
    for (double eps : epsilons) {
        rep.values.push_back(scale_derivative(p, ScaleParams(eps, mu), t)[component]);
    }

    const std::size_t n = rep.values.size();
    const auto richardson = [&](std::size_t k) {
        const double r = rep.epsilons[k] / rep.epsilons[k + 1];
        return (r * rep.values[k + 1] - rep.values[k]) / (r - 1.0);
    };
    const cplx last = richardson(n - 2);
    const cplx prev = richardson(n - 3);
    rep.limit_estimate = last;
    rep.converged = std::isfinite(std::abs(last)) && std::abs(last - prev) < tolerance;

    // slope of ln|v_{k+1} − v_k| against ln ε_k
    std::vector<std::pair<double, double>> pts;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        const double d = std::abs(rep.values[k + 1] - rep.values[k]);
        if (d > 0.0) {
            pts.emplace_back(std::log(rep.epsilons[k]), std::log(d));
        }
    }
    if (pts.size() >= 2) {
        double mx = 0.0, my = 0.0;
        for (const auto& [x, y] : pts) {
            mx += x;
            my += y;
        }
        mx /= static_cast<double>(pts.size());
        my /= static_cast<double>(pts.size());
        double sxx = 0.0, sxy = 0.0;
        for (const auto& [x, y] : pts) {
            sxx += (x - mx) * (x - mx);
            sxy += (x - mx) * (y - my);
        }
        rep.convergence_rate = sxy / sxx;
    }
    return rep;
}

CVec quantum_integral(const Path& dp, const TimeGrid& grid) {
    const TimeGrid& g = dp.grid();
    if (!g.same_interior(grid)) {
        throw ValidationError("quantum_integral: integrand is sampled on a different grid");
    }
    const std::size_t d = dp.dim();
    CVec acc(d, cplx(0.0));
    const std::size_t first = g.first_interior();
    const std::size_t last = g.last_interior();
    for (std::size_t k = first; k <= last; ++k) {
        const double w = (k == first || k == last) ? 0.5 : 1.0;
        const auto v = dp.node_values(k);
        for (std::size_t c = 0; c < d; ++c) {
            acc[c] += w * v[c];
        }
    }
    for (cplx& x : acc) {
        x *= g.h();
    }
    return acc;
}

CVec barrow_defect(const Path& p, const ScaleParams& sp, const TimeGrid& grid) {
    CVec integral = quantum_integral(scale_derivative_path(p, sp, grid), grid);
    const CVec pb = p(grid.node(grid.last_interior()));
    const CVec pa = p(grid.node(grid.first_interior()));
    for (std::size_t c = 0; c < integral.size(); ++c) {
        integral[c] -= pb[c] - pa[c];
    }
    return integral;
}

cplx quadratic_term(const Path& p, const ScaleParams& sp, std::size_t k, std::size_t j, double t) {
    if (k >= p.dim() || j >= p.dim()) {
        throw ValidationError("quadratic_term: index out of range");
    }
    const double eps = sp.epsilon();
    const Stencil s = make_stencil(p, eps, t, true, true);
    const CVec fwd = forward_quotient(s, eps);
    const CVec bwd = backward_quotient(s, eps);
    const cplx imu = kI * mu_value(sp.mu());
    return 0.5 * eps * (fwd[k] * fwd[j] * (1.0 + imu) - bwd[k] * bwd[j] * (1.0 - imu));
}

ScalarField ScalarField::from_expr(Expr f, std::size_t dim, ParamMap params) {
    if (depends_on(f, VarKind::Velocity)) {
        throw ValidationError("scalar field must depend on (t, q) only");
    }
    if (max_index(f) > dim) {
        throw ValidationError("scalar field references an index beyond its dimension");
    }
    ScalarField sf;
    sf.dim = dim;
    sf.df_dt = diff(f, Variable::time());
    std::vector<Expr> hess;
    for (std::size_t k = 0; k < dim; ++k) {
        sf.gradient.push_back(diff(f, Variable::position(k)));
    }
    for (std::size_t k = 0; k < dim; ++k) {
        for (std::size_t j = 0; j < dim; ++j) {
            hess.push_back(diff(sf.gradient[k], Variable::position(j)));
        }
    }
    sf.hessian = std::move(hess);
    sf.f = std::move(f);
    sf.params = std::move(params);
    return sf;
}

cplx composite_scale_derivative(const ScalarField& f, const Path& p, const ScaleParams& sp, double t) {
    if (!f.hessian) {
        throw ValidationError("composite_scale_derivative: the field has no Hessian");
    }
    if (f.dim != p.dim() || f.gradient.size() != f.dim || f.hessian->size() != f.dim * f.dim) {
        throw ValidationError("composite_scale_derivative: dimension mismatch");
    }
    const double eps = sp.epsilon();
    const Stencil s = make_stencil(p, eps, t, true, true);
    const CVec fwd = forward_quotient(s, eps);
    const CVec bwd = backward_quotient(s, eps);
    const CVec box = combine(fwd, bwd, sp);
    const cplx imu = kI * mu_value(sp.mu());

    Bindings b;
    b.t = t;
    b.q = s.center;
    b.params = &f.params;
    cplx out = eval(f.df_dt, b);
    for (std::size_t k = 0; k < f.dim; ++k) {
        out += eval(f.gradient[k], b) * box[k];
    }
    for (std::size_t k = 0; k < f.dim; ++k) {
        for (std::size_t j = 0; j < f.dim; ++j) {
            const Expr& h = (*f.hessian)[k * f.dim + j];
            if (h.is_zero()) {
                continue;
            }
            const cplx a = 0.5 * eps * (fwd[k] * fwd[j] * (1.0 + imu) - bwd[k] * bwd[j] * (1.0 - imu));
            out += 0.5 * eval(h, b) * a;
        }
    }
    return out;
}

cplx leibniz_defect(const Path& f, const Path& g, const ScaleParams& sp, double t) {
    if (f.dim() != 1 || g.dim() != 1) {
        throw ValidationError("leibniz_defect: one-dimensional paths required");
    }
    const cplx lhs = scale_derivative(dot(f, g), sp, t)[0];
    const cplx rhs = scale_derivative(f, sp, t)[0] * g(t)[0] + f(t)[0] * scale_derivative(g, sp, t)[0];
    return lhs - rhs;
}

cplx leibniz_cross_term(const Path& f, const Path& g, const ScaleParams& sp, double t) {
    if (f.dim() != 1 || g.dim() != 1) {
        throw ValidationError("leibniz_cross_term: one-dimensional paths required");
    }
    const double eps = sp.epsilon();
    const cplx fp = delta(f, eps, Side::Forward, t)[0];
    const cplx fm = delta(f, eps, Side::Backward, t)[0];
    const cplx gp = delta(g, eps, Side::Forward, t)[0];
    const cplx gm = delta(g, eps, Side::Backward, t)[0];
    return eps * (sp.forward_weight() * fp * gp - sp.backward_weight() * fm * gm);
}

} // namespace scalevar
