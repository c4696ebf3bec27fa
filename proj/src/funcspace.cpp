#include "scalevar/funcspace.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "scalevar/error.hpp"

namespace scalevar {

namespace {

double norm2(std::span<const cplx> a, std::span<const cplx> b) {
    double s = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        s += std::norm(a[k] - b[k]);
    }
    return std::sqrt(s);
}

} // namespace

std::size_t weierstrass_terms(double a_coef, double trunc_tol) {
    std::size_t n = 0;
    // smallest N with a^{N+1}/(1-a) < tol
    double tail = a_coef / (1.0 - a_coef);
    while (!(tail < trunc_tol)) {
        tail *= a_coef;
        ++n;
        if (n > 100000) {
            throw ValidationError("weierstrass: truncation tolerance unreachable");
        }
    }
    return n + 1;
}

Path weierstrass(double a_coef, double b_base, double trunc_tol) {
    if (!(a_coef > 0.0 && a_coef < 1.0)) {
        throw ValidationError("weierstrass: require 0 < a < 1");
    }
    if (!(b_base > 1.0) || !std::isfinite(b_base)) {
        throw ValidationError("weierstrass: require b > 1");
    }
    if (!(a_coef * b_base >= 1.0)) {
        throw ValidationError("weierstrass: require a*b >= 1");
    }
    if (!(trunc_tol > 0.0)) {
        throw ValidationError("weierstrass: require trunc_tol > 0");
    }
    const std::size_t terms = weierstrass_terms(a_coef, trunc_tol);
    std::vector<double> amp(terms);
    std::vector<double> freq(terms);
    for (std::size_t n = 0; n < terms; ++n) {
        amp[n] = std::pow(a_coef, static_cast<double>(n));
        freq[n] = std::pow(b_base, static_cast<double>(n)) * kPi;
    }
    const double alpha = -std::log(a_coef) / std::log(b_base);
    std::string label = "W(" + std::to_string(a_coef) + "," + std::to_string(b_base) + ")";
    return Path::analytic(
               1,
               [amp = std::move(amp), freq = std::move(freq)](double t) {
                   double s = 0.0;
                   for (std::size_t n = 0; n < amp.size(); ++n) {
                       s += amp[n] * std::cos(freq[n] * t);
                   }
                   return CVec{cplx(s)};
               },
               std::move(label))
        .with_holder_exponent(alpha);
}

HolderEstimate estimate_holder(const Path& p, std::span<const double> deltas, std::size_t sample_count,
                               Interval window) {
    if (deltas.size() < 3) {
        throw ValidationError("estimate_holder: need at least 3 deltas");
    }
    for (std::size_t i = 0; i < deltas.size(); ++i) {
        if (!(deltas[i] > 0.0) || (i > 0 && !(deltas[i] < deltas[i - 1]))) {
            throw ValidationError("estimate_holder: deltas must be positive and strictly decreasing");
        }
    }
    if (sample_count < 2) {
        throw ValidationError("estimate_holder: need at least 2 samples");
    }

    std::vector<double> ts(sample_count);
    if (p.is_sampled()) {
        const TimeGrid& g = p.grid();
        for (double d : deltas) {
            g.steps_for(d);
        }
        const std::size_t n = g.steps();
        for (std::size_t j = 0; j < sample_count; ++j) {
            const std::size_t k = g.first_interior() + (j * n) / (sample_count - 1);
            ts[j] = g.node(k);
        }
    } else {
        for (std::size_t j = 0; j < sample_count; ++j) {
            ts[j] = window.lo + (window.hi - window.lo) * static_cast<double>(j) / static_cast<double>(sample_count - 1);
        }
    }
    const Interval dom = p.domain();
    if (!dom.contains(ts.front()) || !dom.contains(ts.back() + deltas.front())) {
        throw ValidationError("estimate_holder: t + delta leaves the path domain");
    }

    HolderEstimate est;
    est.delta_range = {deltas.back(), deltas.front()};
    est.deltas.assign(deltas.begin(), deltas.end());
    std::vector<CVec> base(sample_count);
    for (std::size_t j = 0; j < sample_count; ++j) {
        base[j] = p(ts[j]);
    }
    for (double d : deltas) {
        double m = 0.0;
        for (std::size_t j = 0; j < sample_count; ++j) {
            m = std::max(m, norm2(p(ts[j] + d), base[j]));
        }
        if (!(m > 0.0)) {
            throw ValidationError("estimate_holder: degenerate oscillation (M(delta) = 0)");
        }
        est.oscillations.push_back(m);
    }

    // least squares ln M = c + alpha ln δ
    const std::size_t n = deltas.size();
    double sx = 0.0, sy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sx += std::log(deltas[i]);
        sy += std::log(est.oscillations[i]);
    }
    const double mx = sx / static_cast<double>(n);
    const double my = sy / static_cast<double>(n);
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = std::log(deltas[i]) - mx;
        sxx += dx * dx;
        sxy += dx * (std::log(est.oscillations[i]) - my);
    }
    est.alpha = sxy / sxx;
    const double intercept = my - est.alpha * mx;
    double ss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = std::log(est.oscillations[i]) - (intercept + est.alpha * std::log(deltas[i]));
        ss += r * r;
    }
    est.fit_residual = std::sqrt(ss / static_cast<double>(n));
    return est;
}

Path mean_function(const Path& p, double epsilon, Side sigma, std::size_t panels) {
    if (p.is_sampled()) {
        throw ValidationError("mean_function: requires an analytic path (quadrature needs off-node values)");
    }
    if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
        throw ValidationError("mean_function: epsilon must be positive");
    }
    if (panels < 64) {
        throw ValidationError("mean_function: at least 64 Simpson panels required");
    }
    panels += panels % 2;
    const double s = sigma == Side::Forward ? 1.0 : -1.0;
    const Interval dom = p.domain();
    const Interval out_dom = sigma == Side::Forward ? Interval{dom.lo, dom.hi - epsilon}
                                                   : Interval{dom.lo + epsilon, dom.hi};
    const std::size_t d = p.dim();
    return Path::analytic(
        d,
        [p, epsilon, s, panels, d](double t) {
            // (σ/ε)∫_t^{t+σε} = (1/ε)∫ over the interval of length ε on side σ
            const double lo = s > 0.0 ? t : t - epsilon;
            const double w = epsilon / static_cast<double>(panels);
            CVec acc(d, cplx(0.0));
            for (std::size_t k = 0; k <= panels; ++k) {
                const double weight = (k == 0 || k == panels) ? 1.0 : (k % 2 == 1 ? 4.0 : 2.0);
                const CVec v = p(lo + static_cast<double>(k) * w);
                for (std::size_t c = 0; c < d; ++c) {
                    acc[c] += weight * v[c];
                }
            }
            for (cplx& x : acc) {
                x *= w / 3.0 / epsilon;
            }
            return acc;
        },
        "mean(" + p.label() + ")", out_dom);
}

} // namespace scalevar
