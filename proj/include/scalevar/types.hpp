#pragma once

#include <complex>
#include <limits>
#include <vector>

namespace scalevar {

using cplx = std::complex<double>;
using CVec = std::vector<cplx>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr cplx kI{0.0, 1.0};

/// Closed real interval; the default is the whole real line.
struct Interval {
    double lo = -std::numeric_limits<double>::infinity();
    double hi = std::numeric_limits<double>::infinity();

    bool contains(double t) const noexcept { return t >= lo && t <= hi; }
};

} // namespace scalevar
