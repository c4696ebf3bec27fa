#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "scalevar/grid.hpp"
#include "scalevar/path.hpp"

namespace scalevar {

/// Result of a max-oscillation log–log regression.
struct HolderEstimate {
    double alpha = 0.0;
    double fit_residual = 0.0;  // RMS deviation of ln M(δ) from the fitted line
    std::pair<double, double> delta_range;
    std::vector<double> deltas;
    std::vector<double> oscillations;  // M(δ) per delta
};

/// Truncated Weierstrass function t ↦ Σ_{n=0}^{N} a^n cos(b^n π t), real-valued
/// and one-dimensional, with N the smallest integer such that the geometric
/// tail a^{N+1}/(1-a) is below `trunc_tol`. The theoretical exponent
/// −ln a / ln b is attached as the path's Hölder exponent.
///
/// Requires 0 < a < 1, b > 1, a·b >= 1 and trunc_tol > 0.
Path weierstrass(double a_coef, double b_base, double trunc_tol);

/// Number of terms kept by weierstrass() (N + 1).
std::size_t weierstrass_terms(double a_coef, double trunc_tol);

/// Estimates the Hölder exponent as the least-squares slope of ln M(δ) vs ln δ
/// where M(δ) = max_t ‖p(t+δ) − p(t)‖ over `sample_count` equispaced t.
///
/// Sampled paths use the nodes of [a, b] (every δ must be a multiple of h).
/// Analytic paths sample `window`. Requires at least 3 strictly decreasing
/// positive deltas; throws ValidationError when t + δ leaves the domain or the
/// oscillation vanishes ("degenerate oscillation").
HolderEstimate estimate_holder(const Path& p, std::span<const double> deltas, std::size_t sample_count,
                               Interval window = {0.0, 1.0});

enum class Side { Backward = -1, Forward = 1 };

/// ε-mean function t ↦ (σ/ε) ∫_t^{t+σε} p(s) ds by composite Simpson with
/// `panels` panels (at least 64). Its classical derivative is the one-sided
/// difference quotient of p at scale ε.
Path mean_function(const Path& p, double epsilon, Side sigma, std::size_t panels = 64);

} // namespace scalevar
