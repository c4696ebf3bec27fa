#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>

#include "scalevar/grid.hpp"
#include "scalevar/types.hpp"

namespace scalevar {

/// A d-dimensional complex-valued function of time.
///
/// Analytic paths evaluate anywhere in their domain. Sampled paths hold one
/// value per node of a TimeGrid and evaluate only at nodes; asking for an
/// off-node time is a ValidationError. Paths are immutable and cheap to copy.
class Path {
public:
    using Evaluator = std::function<CVec(double)>;

    static Path analytic(std::size_t dim, Evaluator f, std::string label = {},
                         Interval domain = {});

    /// `values` is row-major: node k occupies [k·dim, (k+1)·dim).
    /// Throws ValidationError on size mismatch or non-finite values.
    static Path sampled(TimeGrid grid, std::size_t dim, std::vector<cplx> values,
                        std::string label = {});

    std::size_t dim() const noexcept { return dim_; }
    bool is_sampled() const noexcept { return grid_.has_value(); }
    const std::string& label() const noexcept { return label_; }
    Interval domain() const noexcept;

    /// Grid of a sampled path; ValidationError for analytic paths.
    const TimeGrid& grid() const;

    /// Value at t. Throws ValidationError when t is outside the domain or off
    /// the grid, NumericalError when an analytic evaluator returns non-finite
    /// values or the wrong dimension.
    CVec operator()(double t) const;

    /// Component k of the value at node `k_node` of a sampled path.
    std::span<const cplx> node_values(std::size_t k_node) const;

    /// Raw sample storage (sampled paths only).
    std::span<const cplx> samples() const;

    /// Hölder exponent attached by generators with a known exponent.
    std::optional<double> holder_exponent() const noexcept { return holder_; }
    Path with_holder_exponent(double alpha) const;
    Path with_label(std::string label) const;

private:
    Path() = default;

    std::size_t dim_ = 0;
    std::string label_;
    std::optional<double> holder_;
    Interval domain_;
    Evaluator eval_;
    std::optional<TimeGrid> grid_;
    std::shared_ptr<const std::vector<cplx>> values_;
};

/// Samples an analytic path at every node of `grid` (padding included).
Path sample(const Path& p, const TimeGrid& grid);

/// Single-component view of component k.
Path component(const Path& p, std::size_t k);

/// Stacks paths of equal backing into one path of summed dimension.
Path stack(std::span<const Path> parts);

/// Pointwise inner product Σ_k p_k·q_k (no conjugation), dimension 1.
Path dot(const Path& p, const Path& q);

/// α·p + β·q.
Path linear_combination(cplx alpha, const Path& p, cplx beta, const Path& q);

/// Real and imaginary parts as real-valued paths.
Path real_part(const Path& p);
Path imag_part(const Path& p);

} // namespace scalevar
