#include "scalevar/varcalc.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "scalevar/error.hpp"
#include "scalevar/parallel.hpp"

namespace scalevar {

LagrangianSpec LagrangianSpec::create(Expr lagrangian, std::size_t dim, ParamMap params) {
    if (dim == 0) {
        throw ValidationError("lagrangian: dimension must be positive");
    }
    if (max_index(lagrangian) > dim) {
        throw ValidationError("lagrangian references an index beyond dimension " + std::to_string(dim));
    }
    LagrangianSpec lg;
    lg.dim_ = dim;
    lg.dL_dt_ = diff(lagrangian, Variable::time());
    for (std::size_t k = 0; k < dim; ++k) {
        lg.grad_q_.push_back(diff(lagrangian, Variable::position(k)));
        lg.grad_v_.push_back(diff(lagrangian, Variable::velocity(k)));
    }
    lg.L_ = std::move(lagrangian);
    lg.params_ = std::move(params);
    return lg;
}

LagrangianSpec LagrangianSpec::parse(std::string_view text, std::size_t dim, ParamMap params) {
    Expr e = scalevar::parse(text, dim, params);
    return create(std::move(e), dim, std::move(params));
}

SymmetrySpec SymmetrySpec::create(Expr tau, std::vector<Expr> xi, double s_step) {
    if (xi.empty()) {
        throw ValidationError("symmetry: xi must have one component per dimension");
    }
    if (depends_on(tau, VarKind::Velocity)) {
        throw ValidationError("symmetry: tau must not depend on v");
    }
    for (const Expr& x : xi) {
        if (depends_on(x, VarKind::Velocity)) {
            throw ValidationError("symmetry: xi must not depend on v");
        }
    }
    if (!(s_step > 0.0 && s_step <= 0.1)) {
        throw ValidationError("symmetry: s_step must lie in (0, 0.1]");
    }
    SymmetrySpec s;
    s.tau_ = std::move(tau);
    s.xi_ = std::move(xi);
    s.s_step_ = s_step;
    return s;
}

SymmetrySpec SymmetrySpec::parse(std::string_view tau, const std::vector<std::string>& xi, std::size_t dim,
                                 const ParamMap& params, double s_step) {
    if (xi.size() != dim) {
        throw ValidationError("symmetry: expected " + std::to_string(dim) + " xi components, got " +
                              std::to_string(xi.size()));
    }
    std::vector<Expr> xs;
    for (const auto& x : xi) {
        xs.push_back(scalevar::parse(x, dim, params));
    }
    return create(scalevar::parse(tau, dim, params), std::move(xs), s_step);
}

void finalize(ResidualReport& r) {
    double mx = 0.0;
    double ss = 0.0;
    for (const cplx& x : r.residuals) {
        mx = std::max(mx, std::abs(x));
        ss += std::norm(x);
    }
    r.max_abs = mx;
    r.l2 = std::sqrt(r.weight * ss);
}

NoetherReport make_noether_report(std::vector<double> times, std::vector<cplx> samples) {
    NoetherReport rep;
    rep.node_times = std::move(times);
    rep.constant_samples = std::move(samples);
    if (rep.constant_samples.empty()) {
        return rep;
    }
    cplx sum = 0.0;
    for (const cplx& c : rep.constant_samples) {
        sum += c;
    }
    rep.mean = sum / static_cast<double>(rep.constant_samples.size());
    double dev = 0.0;
    for (const cplx& c : rep.constant_samples) {
        dev = std::max(dev, std::abs(c - rep.mean));
    }
    rep.drift = dev / std::max(1.0, std::abs(rep.mean));
    return rep;
}

namespace {

// Values of q and □_ε q at the nodes of [a, b].
struct Along {
    const Path& p;
    TimeGrid inner;
    std::size_t offset;
    Path v;

    std::span<const cplx> q(std::size_t k) const { return p.node_values(offset + k); }
    double t(std::size_t k) const { return inner.node(k); }
    std::size_t size() const { return inner.size(); }
};

Along prepare(std::size_t dim, const Path& p, const ScaleParams& sp, double pad_factor) {
    if (!p.is_sampled()) {
        throw ValidationError("path must be sampled on a padded grid");
    }
    if (p.dim() != dim) {
        throw ValidationError("dimension mismatch: problem has d = " + std::to_string(dim) + ", path has d = " +
                              std::to_string(p.dim()));
    }
    const TimeGrid& g = p.grid();
    g.steps_for(sp.epsilon());
    if (g.pad() < pad_factor * sp.epsilon() * (1.0 - 1e-9)) {
        throw ValidationError("grid padding " + std::to_string(g.pad()) + " is smaller than " +
                              (pad_factor == 1.0 ? std::string("epsilon") : std::string("2*epsilon")) + " = " +
                              std::to_string(pad_factor * sp.epsilon()));
    }
    return Along{p, g.with_pad_steps(0), g.first_interior(), scale_derivative_path(p, sp)};
}

Bindings bind(const Along& a, std::size_t k, const ParamMap& params) {
    Bindings b;
    b.t = a.t(k);
    b.q = a.q(k);
    b.v = a.v.node_values(k);
    b.params = &params;
    return b;
}

cplx trapezoid(const std::vector<cplx>& f, double h) {
    cplx s = 0.0;
    for (std::size_t k = 0; k < f.size(); ++k) {
        const double w = (k == 0 || k + 1 == f.size()) ? 0.5 : 1.0;
        s += w * f[k];
    }
    return s * h;
}

cplx dot_exprs(const std::vector<Expr>& es, std::span<const cplx> xs, const Bindings& b) {
    cplx s = 0.0;
    for (std::size_t c = 0; c < es.size(); ++c) {
        s += eval(es[c], b) * xs[c];
    }
    return s;
}

// Residual of (paths evaluated on the inner grid) over [a+ε, b−ε]:
// r = lhs(k) − □_ε(series)(k).
template <class Lhs>
ResidualReport window_residual(const Along& a, const ScaleParams& sp, const Path& series, Lhs lhs) {
    const std::size_t m = a.inner.steps_for(sp.epsilon());
    const std::size_t n = a.inner.steps();
    if (2 * m > n) {
        throw ValidationError("epsilon is too large for the interval: window [a+eps, b-eps] is empty");
    }
    const std::size_t d = series.dim();
    ResidualReport rep;
    rep.dim = d;
    rep.weight = a.inner.h();
    const std::size_t count = n - 2 * m + 1;
    rep.node_times.resize(count);
    rep.residuals.resize(count * d);
    parallel_for(count, [&](std::size_t i) {
        const std::size_t k = m + i;
        rep.node_times[i] = a.t(k);
        const CVec box = scale_derivative(series, sp, a.t(k));
        const CVec left = lhs(k);
        for (std::size_t c = 0; c < d; ++c) {
            rep.residuals[i * d + c] = left[c] - box[c];
        }
    });
    finalize(rep);
    return rep;
}

// Sampled composite path t ↦ (exprs)(t, q(t)) over p's padded grid.
Path composite_path(const std::vector<Expr>& exprs, const Path& p, const ParamMap& params, const char* label) {
    const TimeGrid& g = p.grid();
    const std::size_t d = exprs.size();
    std::vector<cplx> vals(g.size() * d);
    parallel_for(g.size(), [&](std::size_t k) {
        Bindings b;
        b.t = g.node(k);
        b.q = p.node_values(k);
        b.params = &params;
        for (std::size_t c = 0; c < d; ++c) {
            vals[k * d + c] = eval(exprs[c], b);
        }
    });
    return Path::sampled(g, d, std::move(vals), label);
}

struct GeneratorTrace {
    Path tau;      // τ(t, q(t)) on the padded grid
    Path xi;       // ξ(t, q(t)) on the padded grid
    Path box_tau;  // □_ε τ on [a, b]
    Path box_xi;   // □_ε ξ on [a, b]
};

GeneratorTrace trace_generator(const LagrangianSpec& lg, const Path& p, const SymmetrySpec& sym,
                               const ScaleParams& sp) {
    if (sym.dim() != lg.dim()) {
        throw ValidationError("symmetry dimension does not match the lagrangian");
    }
    Path tau = composite_path({sym.tau()}, p, lg.params(), "tau");
    Path xi = composite_path(sym.xi(), p, lg.params(), "xi");
    Path box_tau = scale_derivative_path(tau, sp);
    Path box_xi = scale_derivative_path(xi, sp);
    return {std::move(tau), std::move(xi), std::move(box_tau), std::move(box_xi)};
}

} // namespace

cplx evaluate_functional(const LagrangianSpec& lg, const Path& p, const ScaleParams& sp) {
    return trapezoid(functional_integrand(lg, p, sp).values, p.grid().h());
}

NodeSeries functional_integrand(const LagrangianSpec& lg, const Path& p, const ScaleParams& sp) {
    const Along a = prepare(lg.dim(), p, sp, 1.0);
    std::vector<cplx> f(a.size());
    std::vector<double> ts(a.size());
    parallel_for(a.size(), [&](std::size_t k) {
        ts[k] = a.t(k);
        f[k] = eval(lg.lagrangian(), bind(a, k, lg.params()));
    });
    return NodeSeries{std::move(ts), std::move(f)};
}

ResidualReport euler_lagrange_residual(const LagrangianSpec& lg, const Path& p, const ScaleParams& sp) {
    const Along a = prepare(lg.dim(), p, sp, 2.0);
    const std::size_t d = lg.dim();
    std::vector<cplx> momentum(a.size() * d);
    parallel_for(a.size(), [&](std::size_t k) {
        const Bindings b = bind(a, k, lg.params());
        for (std::size_t c = 0; c < d; ++c) {
            momentum[k * d + c] = eval(lg.grad_v()[c], b);
        }
    });
    const Path mom = Path::sampled(a.inner, d, std::move(momentum), "momentum");
    return window_residual(a, sp, mom, [&](std::size_t k) {
        const Bindings b = bind(a, k, lg.params());
        CVec out(d);
        for (std::size_t c = 0; c < d; ++c) {
            out[c] = eval(lg.grad_q()[c], b);
        }
        return out;
    });
}

ResidualReport dubois_reymond_residual(const LagrangianSpec& lg, const Path& p, const ScaleParams& sp) {
    const Along a = prepare(lg.dim(), p, sp, 2.0);
    std::vector<cplx> energy(a.size());
    parallel_for(a.size(), [&](std::size_t k) {
        const Bindings b = bind(a, k, lg.params());
        energy[k] = eval(lg.lagrangian(), b) - dot_exprs(lg.grad_v(), b.v, b);
    });
    const Path e = Path::sampled(a.inner, 1, std::move(energy), "energy");
    // □E − ∂₁L = −(∂₁L − □E)
    ResidualReport rep = window_residual(a, sp, e, [&](std::size_t k) {
        return CVec{eval(lg.dL_dt(), bind(a, k, lg.params()))};
    });
    for (cplx& r : rep.residuals) {
        r = -r;
    }
    return rep;
}

cplx invariance_derivative(const LagrangianSpec& lg, const Path& p, const SymmetrySpec& sym, const ScaleParams& sp) {
    const Along a = prepare(lg.dim(), p, sp, 1.0);
    const GeneratorTrace g = trace_generator(lg, p, sym, sp);
    const std::size_t d = lg.dim();
    const double s_step = sym.s_step();
    const bool time_dependent = depends_on(lg.lagrangian(), VarKind::Time);

    const auto functional_at = [&](double s) {
        std::vector<cplx> f(a.size());
        parallel_for(a.size(), [&](std::size_t k) {
            const std::size_t kp = a.offset + k;
            const cplx tau = g.tau.node_values(kp)[0];
            const auto xi = g.xi.node_values(kp);
            const cplx jac = 1.0 + s * g.box_tau.node_values(k)[0];
            if (std::abs(jac) < 1e-6) {
                throw NumericalError("invariance: 1 + s*box(tau) vanishes at t = " + std::to_string(a.t(k)));
            }
            const auto q = a.q(k);
            const auto v = a.v.node_values(k);
            const auto bxi = g.box_xi.node_values(k);
            CVec qs(d);
            CVec vs(d);
            for (std::size_t c = 0; c < d; ++c) {
                qs[c] = q[c] + s * xi[c];
                vs[c] = (v[c] + s * bxi[c]) / jac;
            }
            // t-dependent L requires a real τ
            const cplx ts = a.t(k) + s * tau;
            if (time_dependent && ts.imag() != 0.0) {
                throw ValidationError("invariance: tau must be real along the path when L depends on t");
            }
            Bindings b;
            b.t = ts.real();
            b.q = qs;
            b.v = vs;
            b.params = &lg.params();
            f[k] = eval(lg.lagrangian(), b) * jac;
        });
        return trapezoid(f, a.inner.h());
    };
    return (functional_at(s_step) - functional_at(-s_step)) / (2.0 * s_step);
}

NodeSeries invariance_integrand(const LagrangianSpec& lg, const Path& p, const SymmetrySpec& sym,
                                const ScaleParams& sp) {
    const Along a = prepare(lg.dim(), p, sp, 1.0);
    const GeneratorTrace g = trace_generator(lg, p, sym, sp);
    const std::size_t d = lg.dim();
    NodeSeries out;
    out.node_times.resize(a.size());
    out.values.resize(a.size());
    parallel_for(a.size(), [&](std::size_t k) {
        const std::size_t kp = a.offset + k;
        const Bindings b = bind(a, k, lg.params());
        const cplx tau = g.tau.node_values(kp)[0];
        const auto xi = g.xi.node_values(kp);
        const cplx btau = g.box_tau.node_values(k)[0];
        const auto bxi = g.box_xi.node_values(k);
        cplx s = eval(lg.dL_dt(), b) * tau + eval(lg.lagrangian(), b) * btau;
        for (std::size_t c = 0; c < d; ++c) {
            s += eval(lg.grad_q()[c], b) * xi[c];
            s += eval(lg.grad_v()[c], b) * (bxi[c] - b.v[c] * btau);
        }
        out.node_times[k] = b.t;
        out.values[k] = s;
    });
    return out;
}

cplx invariance_integrand_integral(const LagrangianSpec& lg, const Path& p, const SymmetrySpec& sym,
                                   const ScaleParams& sp) {
    return trapezoid(invariance_integrand(lg, p, sym, sp).values, p.grid().h());
}

NoetherReport noether_constant(const LagrangianSpec& lg, const Path& p, const SymmetrySpec& sym,
                               const ScaleParams& sp) {
    if (sym.dim() != lg.dim()) {
        throw ValidationError("symmetry dimension does not match the lagrangian");
    }
    const Along a = prepare(lg.dim(), p, sp, 1.0);
    std::vector<cplx> c(a.size());
    std::vector<double> ts(a.size());
    parallel_for(a.size(), [&](std::size_t k) {
        Bindings b = bind(a, k, lg.params());
        ts[k] = b.t;
        CVec xi(lg.dim());
        for (std::size_t j = 0; j < lg.dim(); ++j) {
            xi[j] = eval(sym.xi()[j], b);
        }
        const cplx tau = eval(sym.tau(), b);
        const cplx momentum_xi = dot_exprs(lg.grad_v(), xi, b);
        const cplx energy = eval(lg.lagrangian(), b) - dot_exprs(lg.grad_v(), b.v, b);
        c[k] = momentum_xi + energy * tau;
    });
    return make_noether_report(std::move(ts), std::move(c));
}

} // namespace scalevar
