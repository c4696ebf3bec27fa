#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

#include "scalevar/expr.hpp"
#include "scalevar/path.hpp"
#include "scalevar/scale_ops.hpp"

namespace scalevar {

/// L(t, q, v) together with its partials ∂₁L = ∂L/∂t, ∂₂L = ∇_q L and
/// ∂₃L = ∇_v L, all derived symbolically.
class LagrangianSpec {
public:
    static LagrangianSpec create(Expr lagrangian, std::size_t dim, ParamMap params = {});
    static LagrangianSpec parse(std::string_view text, std::size_t dim, ParamMap params = {});

    std::size_t dim() const noexcept { return dim_; }
    const Expr& lagrangian() const noexcept { return L_; }
    const Expr& dL_dt() const noexcept { return dL_dt_; }
    const std::vector<Expr>& grad_q() const noexcept { return grad_q_; }
    const std::vector<Expr>& grad_v() const noexcept { return grad_v_; }
    const ParamMap& params() const noexcept { return params_; }

private:
    LagrangianSpec() = default;

    std::size_t dim_ = 0;
    Expr L_;
    Expr dL_dt_;
    std::vector<Expr> grad_q_;
    std::vector<Expr> grad_v_;
    ParamMap params_;
};

/// Infinitesimal generator t̄ = t + sτ(t,q), q̄ = q + sξ(t,q).
class SymmetrySpec {
public:
    static constexpr double kDefaultStep = 1e-4;

    /// τ and ξ must not reference v; s_step in (0, 0.1].
    static SymmetrySpec create(Expr tau, std::vector<Expr> xi, double s_step = kDefaultStep);
    static SymmetrySpec parse(std::string_view tau, const std::vector<std::string>& xi, std::size_t dim,
                              const ParamMap& params = {}, double s_step = kDefaultStep);

    const Expr& tau() const noexcept { return tau_; }
    const std::vector<Expr>& xi() const noexcept { return xi_; }
    double s_step() const noexcept { return s_step_; }
    std::size_t dim() const noexcept { return xi_.size(); }

private:
    SymmetrySpec() = default;

    Expr tau_;
    std::vector<Expr> xi_;
    double s_step_ = kDefaultStep;
};

/// Pointwise residuals; `residuals` is row-major with `dim` entries per node.
struct ResidualReport {
    std::size_t dim = 1;
    std::vector<double> node_times;
    std::vector<cplx> residuals;
    double max_abs = 0.0;
    double l2 = 0.0;      // sqrt(weight · Σ|r|²)
    double weight = 0.0;  // grid step for time-grid reports
};

/// Scalar samples at grid nodes.
struct NodeSeries {
    std::vector<double> node_times;
    std::vector<cplx> values;
};

struct NoetherReport {
    std::vector<double> node_times;
    std::vector<cplx> constant_samples;
    cplx mean{};
    double drift = 0.0;  // max |C − mean| / max(1, |mean|)
};

/// Fills max_abs and l2 from residuals and weight.
void finalize(ResidualReport& r);

/// Fills mean and drift from constant_samples.
NoetherReport make_noether_report(std::vector<double> times, std::vector<cplx> samples);

/// Trapezoid quadrature over [a, b] of L(t, q, □_ε q). `p` must be sampled
/// with padding of at least ε.
cplx evaluate_functional(const LagrangianSpec& lg, const Path& p, const ScaleParams& sp);

/// Integrand L(t, q(t), □_ε q(t)) at the nodes of [a, b].
NodeSeries functional_integrand(const LagrangianSpec& lg, const Path& p, const ScaleParams& sp);

/// ∂₂L − □_ε ∂₃L on the window [a+ε, b−ε]. Requires padding >= 2ε.
ResidualReport euler_lagrange_residual(const LagrangianSpec& lg, const Path& p, const ScaleParams& sp);

/// □_ε{L − ∂₃L·□_ε q} − ∂₁L on the window [a+ε, b−ε]. Requires padding >= 2ε.
ResidualReport dubois_reymond_residual(const LagrangianSpec& lg, const Path& p, const ScaleParams& sp);

/// Central difference in s of the transformed functional
/// I(s) = ∫ L(t+sτ, q+sξ, (□q+s□ξ)/(1+s□τ)) (1+s□τ) dt.
cplx invariance_derivative(const LagrangianSpec& lg, const Path& p, const SymmetrySpec& sym, const ScaleParams& sp);

/// ∂₁L τ + ∂₂L·ξ + ∂₃L·(□ξ − □q □τ) + L □τ at the nodes of [a, b].
NodeSeries invariance_integrand(const LagrangianSpec& lg, const Path& p, const SymmetrySpec& sym,
                                const ScaleParams& sp);

/// Trapezoid integral of invariance_integrand over [a, b].
cplx invariance_integrand_integral(const LagrangianSpec& lg, const Path& p, const SymmetrySpec& sym,
                                   const ScaleParams& sp);

/// C = ∂₃L·ξ + (L − ∂₃L·□q) τ at every node of [a, b].
NoetherReport noether_constant(const LagrangianSpec& lg, const Path& p, const SymmetrySpec& sym,
                               const ScaleParams& sp);

} // namespace scalevar
