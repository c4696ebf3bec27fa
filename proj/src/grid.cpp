#include "scalevar/grid.hpp"

#include <cmath>
#include <string>

#include "scalevar/error.hpp"

namespace scalevar {

TimeGrid::TimeGrid(double a, double b, std::size_t n, std::size_t pad_steps)
    : a_(a), b_(b), n_(n), h_((b - a) / static_cast<double>(n)), pad_steps_(pad_steps) {}

TimeGrid TimeGrid::make(double a, double b, std::size_t n, double pad) {
    if (!std::isfinite(a) || !std::isfinite(b) || !std::isfinite(pad)) {
        throw ValidationError("grid: non-finite input");
    }
    if (!(a < b)) {
        throw ValidationError("grid: require a < b");
    }
    if (n < 2) {
        throw ValidationError("grid: require n >= 2");
    }
    if (pad < 0.0) {
        throw ValidationError("grid: require pad >= 0");
    }
    const double h = (b - a) / static_cast<double>(n);
    const double steps = std::round(pad / h);
    if (steps > 1e9) {
        throw ValidationError("grid: padding too large");
    }
    return TimeGrid(a, b, n, static_cast<std::size_t>(steps));
}

std::optional<std::size_t> TimeGrid::index_of(double t) const noexcept {
    if (!std::isfinite(t)) {
        return std::nullopt;
    }
    const double x = (t - a_) / h_ + static_cast<double>(pad_steps_);
    const double k = std::round(x);
    if (k < 0.0 || k > static_cast<double>(size() - 1) || std::abs(x - k) > 1e-6) {
        return std::nullopt;
    }
    return static_cast<std::size_t>(k);
}

std::size_t TimeGrid::steps_for(double eps) const {
    if (!(eps > 0.0) || !std::isfinite(eps)) {
        throw ValidationError("epsilon must be positive and finite");
    }
    const double x = eps / h_;
    const double m = std::round(x);
    if (m < 1.0 || std::abs(x - m) > 1e-6 * m) {
        throw ValidationError("epsilon " + std::to_string(eps) +
                              " is not an integer multiple of the grid step " + std::to_string(h_));
    }
    return static_cast<std::size_t>(m);
}

TimeGrid TimeGrid::with_pad_steps(std::size_t pad_steps) const {
    return TimeGrid(a_, b_, n_, pad_steps);
}

bool TimeGrid::same_interior(const TimeGrid& other) const noexcept {
    return a_ == other.a_ && b_ == other.b_ && n_ == other.n_;
}

} // namespace scalevar
