#pragma once

#include <cstddef>
#include <optional>

namespace scalevar {

/// Uniform time grid over [a, b] with n steps, extended by an integer number
/// of padding steps on each side so that stencils reaching t ± ε stay inside
/// the represented domain [a - pad, b + pad].
///
/// Nodes are indexed 0 .. size()-1 over the padded domain; node(k) is computed
/// directly from k, never by accumulation.
class TimeGrid {
public:
    /// Throws ValidationError on non-finite input, a >= b, n < 2 or pad < 0.
    /// The padding is rounded to the nearest multiple of h.
    static TimeGrid make(double a, double b, std::size_t n, double pad);

    double a() const noexcept { return a_; }
    double b() const noexcept { return b_; }
    std::size_t steps() const noexcept { return n_; }
    double h() const noexcept { return h_; }
    std::size_t pad_steps() const noexcept { return pad_steps_; }
    double pad() const noexcept { return static_cast<double>(pad_steps_) * h_; }

    /// Total node count including padding.
    std::size_t size() const noexcept { return n_ + 1 + 2 * pad_steps_; }

    /// Node time for padded index k (0 is a - pad).
    double node(std::size_t k) const noexcept {
        return a_ + (static_cast<double>(k) - static_cast<double>(pad_steps_)) * h_;
    }

    /// Padded index of the first and last node of [a, b].
    std::size_t first_interior() const noexcept { return pad_steps_; }
    std::size_t last_interior() const noexcept { return pad_steps_ + n_; }

    double lo() const noexcept { return node(0); }
    double hi() const noexcept { return node(size() - 1); }

    /// Padded index of the node at time t, if t lies within 1e-6·h of a node.
    std::optional<std::size_t> index_of(double t) const noexcept;

    /// Number of steps m with m·h == eps (to 1e-6 relative); throws
    /// ValidationError if eps is not a positive integer multiple of h.
    std::size_t steps_for(double eps) const;

    /// Same [a, b] and step, different padding.
    TimeGrid with_pad_steps(std::size_t pad_steps) const;

    /// True when both grids describe the same nodes over [a, b].
    bool same_interior(const TimeGrid& other) const noexcept;

    bool operator==(const TimeGrid&) const = default;

private:
    TimeGrid(double a, double b, std::size_t n, std::size_t pad_steps);

    double a_;
    double b_;
    std::size_t n_;
    double h_;
    std::size_t pad_steps_;
};

} // namespace scalevar
