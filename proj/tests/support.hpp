#pragma once

#include <cmath>
#include <complex>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "scalevar/path.hpp"
#include "scalevar/types.hpp"

namespace scalevar::testing {

// Seeded generator for property tests; every suite uses a fixed seed.
class Gen {
public:
    explicit Gen(std::uint64_t seed) : rng_(seed) {}

    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
    int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
    cplx complex(double r) { return {uniform(-r, r), uniform(-r, r)}; }
    bool coin() { return integer(0, 1) == 1; }

    template <class T>
    const T& pick(const std::vector<T>& xs) {
        return xs[static_cast<std::size_t>(integer(0, static_cast<int>(xs.size()) - 1))];
    }

private:
    std::mt19937_64 rng_;
};

inline Path scalar_path(std::function<cplx(double)> f, std::string label = {}) {
    return Path::analytic(1, [f = std::move(f)](double t) { return CVec{f(t)}; }, std::move(label));
}

// Distance in units in the last place between two doubles.
inline double ulps(double a, double b) {
    if (a == b) {
        return 0.0;
    }
    const double scale = std::max(std::abs(a), std::abs(b));
    return std::abs(a - b) / (std::nextafter(scale, INFINITY) - scale);
}

inline double ulps(cplx a, cplx b) { return std::max(ulps(a.real(), b.real()), ulps(a.imag(), b.imag())); }

} // namespace scalevar::testing
