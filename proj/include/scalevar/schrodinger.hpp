#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "scalevar/expr.hpp"
#include "scalevar/path.hpp"
#include "scalevar/scale_ops.hpp"
#include "scalevar/varcalc.hpp"

namespace scalevar {

/// Linear Schrödinger problem iħ∂Ψ/∂t + (ħ²/2m)ΔΨ = UΨ with its wavefunction
/// Ψ(t, q), potential U(q) and γ = ħ/(2m).
class SchrodingerProblem {
public:
    /// Wavefunctions whose modulus drops below this are treated as vanishing.
    static constexpr double kMinModulus = 1e-12;

    static SchrodingerProblem create(Expr psi, Expr potential, std::size_t dim, double hbar, double mass,
                                     ParamMap params = {});
    static SchrodingerProblem parse(std::string_view psi, std::string_view potential, std::size_t dim, double hbar,
                                    double mass, ParamMap params = {});

    std::size_t dim() const noexcept { return dim_; }
    double hbar() const noexcept { return hbar_; }
    double mass() const noexcept { return mass_; }
    double gamma() const noexcept { return gamma_; }
    const Expr& psi() const noexcept { return psi_; }
    const Expr& potential() const noexcept { return potential_; }
    const ParamMap& params() const noexcept { return params_; }

    cplx psi_at(double t, std::span<const cplx> q) const;
    cplx potential_at(std::span<const cplx> q) const;

    /// ∂ ln Ψ / ∂q_k = (∂Ψ/∂q_k)/Ψ. NumericalError if |Ψ| is below kMinModulus.
    CVec log_gradient(double t, std::span<const cplx> q) const;

    /// iħ∂Ψ/∂t + (ħ²/2m) Σ_j ∂²Ψ/∂q_j² − UΨ at one point.
    cplx residual_at(double t, std::span<const cplx> q) const;

private:
    SchrodingerProblem() = default;

    std::size_t dim_ = 0;
    double hbar_ = 1.0;
    double mass_ = 1.0;
    double gamma_ = 0.5;
    Expr psi_;
    Expr potential_;
    Expr dpsi_dt_;
    std::vector<Expr> dpsi_dq_;
    std::vector<Expr> d2psi_dq2_;
    ParamMap params_;
};

struct Trajectory {
    Path path;  // sampled over the padded grid; the node at t = a holds q0
    CVec q0;
};

/// Residual on the lattice t_nodes × q_nodes; weight is 1/N so l2 is the RMS.
ResidualReport schrodinger_residual(const SchrodingerProblem& prob, std::span<const double> t_nodes,
                                    std::span<const CVec> q_nodes);

/// Residual at the points (t, q(t)) of a trajectory over [a, b].
ResidualReport schrodinger_residual_along(const SchrodingerProblem& prob, const Trajectory& traj);

/// Velocity condition □q_k = −2iγ ∂ln Ψ/∂q_k, in quotient form.
CVec velocity_field(const SchrodingerProblem& prob, double t, std::span<const cplx> q);

/// Classical RK4 for dq/dt = velocity_field(t, q) with step h. q0 is the state
/// at t = a; the padding on either side is integrated backward and forward.
/// NumericalError when Ψ vanishes or |q| exceeds 1e6.
Trajectory integrate_trajectory(const SchrodingerProblem& prob, const CVec& q0, const TimeGrid& grid);

/// L = ½ m Σ_k v_k² − U(q).
LagrangianSpec newton_lagrangian(const SchrodingerProblem& prob);

struct EnergyReport {
    NoetherReport theorem_form;  // L − ∂₃L·□q with (τ, ξ) = (1, 0)
    NoetherReport printed_form;  // 2m(γ Σ_k ∂ln Ψ/∂q_k)² + U
};

EnergyReport energy_constant(const SchrodingerProblem& prob, const Trajectory& traj, const ScaleParams& sp);

/// 2mγ² with γ = ħ/(2m).
double energy_coefficient_gamma(double hbar, double mass);
/// (1/8m)(h/π)² with h = 2πħ.
double energy_coefficient_planck(double planck_h, double mass);

} // namespace scalevar
