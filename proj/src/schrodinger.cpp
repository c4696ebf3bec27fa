#include "scalevar/schrodinger.hpp"

#include <cmath>
#include <utility>

#include "scalevar/error.hpp"
#include "scalevar/parallel.hpp"

namespace scalevar {

SchrodingerProblem SchrodingerProblem::create(Expr psi, Expr potential, std::size_t dim, double hbar, double mass,
                                              ParamMap params) {
    if (dim == 0) {
        throw ValidationError("schrodinger: dimension must be positive");
    }
    if (!(hbar > 0.0) || !std::isfinite(hbar)) {
        throw ValidationError("schrodinger: hbar must be positive");
    }
    if (!(mass > 0.0) || !std::isfinite(mass)) {
        throw ValidationError("schrodinger: m must be positive");
    }
    if (depends_on(psi, VarKind::Velocity)) {
        throw ValidationError("schrodinger: psi must depend on (t, q) only");
    }
    if (depends_on(potential, VarKind::Velocity) || depends_on(potential, VarKind::Time)) {
        throw ValidationError("schrodinger: U must depend on q only");
    }
    SchrodingerProblem p;
    p.dim_ = dim;
    p.hbar_ = hbar;
    p.mass_ = mass;
    p.gamma_ = hbar / (2.0 * mass);
    p.dpsi_dt_ = diff(psi, Variable::time());
    for (std::size_t k = 0; k < dim; ++k) {
        p.dpsi_dq_.push_back(diff(psi, Variable::position(k)));
        p.d2psi_dq2_.push_back(diff(p.dpsi_dq_.back(), Variable::position(k)));
    }
    p.psi_ = std::move(psi);
    p.potential_ = std::move(potential);
    p.params_ = std::move(params);
    return p;
}

SchrodingerProblem SchrodingerProblem::parse(std::string_view psi, std::string_view potential, std::size_t dim,
                                             double hbar, double mass, ParamMap params) {
    Expr e_psi = scalevar::parse(psi, dim, params);
    Expr e_u = scalevar::parse(potential, dim, params);
    return create(std::move(e_psi), std::move(e_u), dim, hbar, mass, std::move(params));
}

namespace {

Bindings bind(double t, std::span<const cplx> q, const ParamMap& params) {
    Bindings b;
    b.t = t;
    b.q = q;
    b.params = &params;
    return b;
}

} // namespace

cplx SchrodingerProblem::psi_at(double t, std::span<const cplx> q) const {
    return eval(psi_, bind(t, q, params_));
}

cplx SchrodingerProblem::potential_at(std::span<const cplx> q) const {
    return eval(potential_, bind(0.0, q, params_));
}

CVec SchrodingerProblem::log_gradient(double t, std::span<const cplx> q) const {
    const Bindings b = bind(t, q, params_);
    const cplx psi = eval(psi_, b);
    if (!(std::abs(psi) > kMinModulus)) {
        throw NumericalError("wavefunction vanishes at t = " + std::to_string(t));
    }
    CVec g(dim_);
    for (std::size_t k = 0; k < dim_; ++k) {
        g[k] = eval(dpsi_dq_[k], b) / psi;
    }
    return g;
}

cplx SchrodingerProblem::residual_at(double t, std::span<const cplx> q) const {
    const Bindings b = bind(t, q, params_);
    const cplx psi = eval(psi_, b);
    if (!(std::abs(psi) > kMinModulus)) {
        throw NumericalError("wavefunction vanishes at probe t = " + std::to_string(t));
    }
    cplx lap = 0.0;
    for (const Expr& d2 : d2psi_dq2_) {
        lap += eval(d2, b);
    }
    return kI * hbar_ * eval(dpsi_dt_, b) + (hbar_ * hbar_ / (2.0 * mass_)) * lap - eval(potential_, b) * psi;
}

ResidualReport schrodinger_residual(const SchrodingerProblem& prob, std::span<const double> t_nodes,
                                    std::span<const CVec> q_nodes) {
    ResidualReport rep;
    rep.dim = 1;
    const std::size_t nq = q_nodes.size();
    const std::size_t total = t_nodes.size() * nq;
    for (const CVec& q : q_nodes) {
        if (q.size() != prob.dim()) {
            throw ValidationError("schrodinger_residual: probe point has the wrong dimension");
        }
    }
    rep.node_times.resize(total);
    rep.residuals.resize(total);
    parallel_for(total, [&](std::size_t i) {
        const double t = t_nodes[i / nq];
        rep.node_times[i] = t;
        rep.residuals[i] = prob.residual_at(t, q_nodes[i % nq]);
    });
    rep.weight = total == 0 ? 0.0 : 1.0 / static_cast<double>(total);
    finalize(rep);
    return rep;
}

ResidualReport schrodinger_residual_along(const SchrodingerProblem& prob, const Trajectory& traj) {
    const TimeGrid& g = traj.path.grid();
    const std::size_t first = g.first_interior();
    const std::size_t count = g.steps() + 1;
    ResidualReport rep;
    rep.dim = 1;
    rep.node_times.resize(count);
    rep.residuals.resize(count);
    parallel_for(count, [&](std::size_t i) {
        const double t = g.node(first + i);
        rep.node_times[i] = t;
        rep.residuals[i] = prob.residual_at(t, traj.path.node_values(first + i));
    });
    rep.weight = g.h();
    finalize(rep);
    return rep;
}

CVec velocity_field(const SchrodingerProblem& prob, double t, std::span<const cplx> q) {
    if (q.size() != prob.dim()) {
        throw ValidationError("velocity_field: point has the wrong dimension");
    }
    CVec v = prob.log_gradient(t, q);
    const cplx factor = -2.0 * kI * prob.gamma();
    for (cplx& x : v) {
        x *= factor;
    }
    return v;
}

Trajectory integrate_trajectory(const SchrodingerProblem& prob, const CVec& q0, const TimeGrid& grid) {
    const std::size_t d = prob.dim();
    if (q0.size() != d) {
        throw ValidationError("integrate_trajectory: q0 has the wrong dimension");
    }
    std::vector<cplx> values(grid.size() * d);
    const auto store = [&](std::size_t k, const CVec& q) {
        for (std::size_t c = 0; c < d; ++c) {
            if (!std::isfinite(q[c].real()) || !std::isfinite(q[c].imag()) || std::abs(q[c]) > 1e6) {
                throw NumericalError("trajectory diverges near t = " + std::to_string(grid.node(k)));
            }
            values[k * d + c] = q[c];
        }
    };
    const auto axpy = [d](const CVec& q, double s, const CVec& k) {
        CVec out(d);
        for (std::size_t c = 0; c < d; ++c) {
            out[c] = q[c] + s * k[c];
        }
        return out;
    };
    const auto step = [&](double t, const CVec& q, double h) {
        const CVec k1 = velocity_field(prob, t, q);
        const CVec k2 = velocity_field(prob, t + 0.5 * h, axpy(q, 0.5 * h, k1));
        const CVec k3 = velocity_field(prob, t + 0.5 * h, axpy(q, 0.5 * h, k2));
        const CVec k4 = velocity_field(prob, t + h, axpy(q, h, k3));
        CVec out(d);
        for (std::size_t c = 0; c < d; ++c) {
            out[c] = q[c] + (h / 6.0) * (k1[c] + 2.0 * k2[c] + 2.0 * k3[c] + k4[c]);
        }
        return out;
    };

    velocity_field(prob, grid.a(), q0);  // rejects a start on a node of Ψ
    const std::size_t start = grid.first_interior();
    store(start, q0);
    CVec q = q0;
    for (std::size_t k = start; k + 1 < grid.size(); ++k) {
        q = step(grid.node(k), q, grid.h());
        store(k + 1, q);
    }
    q = q0;
    for (std::size_t k = start; k > 0; --k) {
        q = step(grid.node(k), q, -grid.h());
        store(k - 1, q);
    }
    return Trajectory{Path::sampled(grid, d, std::move(values), "trajectory"), q0};
}

LagrangianSpec newton_lagrangian(const SchrodingerProblem& prob) {
    Expr kinetic = Expr::constant(0.0);
    for (std::size_t k = 0; k < prob.dim(); ++k) {
        kinetic = kinetic + Expr::power(Expr::variable(Variable::velocity(k)), 2.0);
    }
    Expr lagrangian = Expr::constant(0.5 * prob.mass()) * kinetic - prob.potential();
    return LagrangianSpec::create(std::move(lagrangian), prob.dim(), prob.params());
}

EnergyReport energy_constant(const SchrodingerProblem& prob, const Trajectory& traj, const ScaleParams& sp) {
    const std::size_t d = prob.dim();
    const LagrangianSpec lg = newton_lagrangian(prob);
    std::vector<Expr> xi(d, Expr::constant(0.0));
    const SymmetrySpec time_translation = SymmetrySpec::create(Expr::constant(1.0), std::move(xi));

    EnergyReport rep;
    rep.theorem_form = noether_constant(lg, traj.path, time_translation, sp);

    const TimeGrid& g = traj.path.grid();
    const std::size_t first = g.first_interior();
    const std::size_t count = g.steps() + 1;
    std::vector<double> ts(count);
    std::vector<cplx> c(count);
    const double coef = 2.0 * prob.mass();
    parallel_for(count, [&](std::size_t i) {
        const double t = g.node(first + i);
        const auto q = traj.path.node_values(first + i);
        const CVec grad = prob.log_gradient(t, q);
        cplx sum = 0.0;
        for (const cplx& x : grad) {
            sum += x;
        }
        const cplx inner = prob.gamma() * sum;
        ts[i] = t;
        c[i] = coef * inner * inner + prob.potential_at(q);
    });
    rep.printed_form = make_noether_report(std::move(ts), std::move(c));
    return rep;
}

double energy_coefficient_gamma(double hbar, double mass) {
    const double gamma = hbar / (2.0 * mass);
    return 2.0 * mass * gamma * gamma;
}

double energy_coefficient_planck(double planck_h, double mass) {
    const double r = planck_h / kPi;
    return r * r / (8.0 * mass);
}

} // namespace scalevar
