#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "scalevar/expr.hpp"
#include "scalevar/funcspace.hpp"
#include "scalevar/grid.hpp"
#include "scalevar/path.hpp"

namespace scalevar {

/// The five admissible values of μ.
enum class Mu { One, MinusOne, Zero, I, MinusI };

cplx mu_value(Mu mu) noexcept;

/// Parses "1", "-1", "0", "i", "-i"; ValidationError otherwise.
Mu parse_mu(std::string_view text);
std::string to_string(Mu mu);

/// Scale ε > 0 and mixing parameter μ of the ε-scale derivative.
class ScaleParams {
public:
    ScaleParams(double epsilon, Mu mu);

    double epsilon() const noexcept { return epsilon_; }
    Mu mu() const noexcept { return mu_; }

    /// The operator is c⁺Δ⁺ + c⁻Δ⁻ with c± = (1 ± iμ)/2.
    cplx forward_weight() const noexcept;
    cplx backward_weight() const noexcept;

private:
    double epsilon_;
    Mu mu_;
};

/// One-sided difference quotient: (p(t) − p(t−ε))/ε for Backward,
/// (p(t+ε) − p(t))/ε for Forward.
CVec delta(const Path& p, double epsilon, Side sigma, double t);

/// ε-scale derivative ½(Δ⁺+Δ⁻) + (iμ/2)(Δ⁺−Δ⁻), componentwise, evaluated
/// in the equivalent weight form c⁺Δ⁺ + c⁻Δ⁻ so that μ = ∓i reproduce Δ±
/// and μ = 0 the half-sum bit for bit.
CVec scale_derivative(const Path& p, const ScaleParams& sp, double t);

/// Scale derivative at every node of [a, b], returned as a path sampled on
/// the unpadded grid. Requires the grid padding to cover ε. The sampled
/// overload uses the path's own grid.
Path scale_derivative_path(const Path& p, const ScaleParams& sp, const TimeGrid& grid);
Path scale_derivative_path(const Path& p, const ScaleParams& sp);

/// ε-sweep diagnostics standing in for the ⟨·⟩ extraction.
struct ExtrapolationReport {
    std::vector<double> epsilons;
    std::vector<cplx> values;
    cplx limit_estimate{};
    std::optional<double> convergence_rate;  // absent when successive differences vanish
    bool converged = false;
    double tolerance = 0.0;
};

/// ε_k = 1e-2·2^{-k}, k = 0..10.
std::vector<double> default_epsilon_sweep();
inline constexpr double kDefaultSweepTolerance = 1e-8;

/// Evaluates the scale derivative of component `component` over the sweep and
/// extrapolates to ε → 0 assuming an error linear in ε (two-point Richardson
/// on the last pair). converged is set when the last two extrapolants differ
/// by less than `tolerance`.
ExtrapolationReport quantum_derivative(const Path& p, Mu mu, std::span<const double> epsilons, double tolerance,
                                       double t, std::size_t component = 0);

/// Trapezoid integral over [a, b] of a path sampled on `grid`'s nodes of [a, b].
CVec quantum_integral(const Path& dp, const TimeGrid& grid);

/// ∫_a^b □_ε p dt − (p(b) − p(a)): the empirical Barrow defect.
CVec barrow_defect(const Path& p, const ScaleParams& sp, const TimeGrid& grid);

/// Finite-ε representative of a_{k,j}:
/// (ε/2)[(Δ⁺x_k)(Δ⁺x_j)(1+iμ) − (Δ⁻x_k)(Δ⁻x_j)(1−iμ)]. Indices are 0-based.
cplx quadratic_term(const Path& p, const ScaleParams& sp, std::size_t k, std::size_t j, double t);

/// Scalar field f(x, t) with symbolic time derivative, gradient and Hessian.
struct ScalarField {
    std::size_t dim = 0;
    Expr f;
    Expr df_dt;
    std::vector<Expr> gradient;
    std::optional<std::vector<Expr>> hessian;  // row-major dim × dim
    ParamMap params;

    /// Builds all derivatives symbolically from f over (t, q1..qd).
    static ScalarField from_expr(Expr f, std::size_t dim, ParamMap params = {});
};

/// ∂f/∂t + ∇f·□x + ½ Σ_{k,j} ∂²f/∂x_k∂x_j a_{k,j}, evaluated at (x(t), t).
cplx composite_scale_derivative(const ScalarField& f, const Path& p, const ScaleParams& sp, double t);

/// □_ε(f·g) − (□_ε f·g + f·□_ε g) for one-dimensional paths.
cplx leibniz_defect(const Path& f, const Path& g, const ScaleParams& sp, double t);

/// The closed-form cross term ε(c⁺Δ⁺fΔ⁺g − c⁻Δ⁻fΔ⁻g) the defect equals.
cplx leibniz_cross_term(const Path& f, const Path& g, const ScaleParams& sp, double t);

} // namespace scalevar
