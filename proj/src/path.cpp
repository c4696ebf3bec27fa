#include "scalevar/path.hpp"

#include <cmath>
#include <utility>

#include "scalevar/error.hpp"
#include "scalevar/parallel.hpp"

namespace scalevar {

namespace {

bool all_finite(std::span<const cplx> xs) {
    for (const cplx& x : xs) {
        if (!std::isfinite(x.real()) || !std::isfinite(x.imag())) {
            return false;
        }
    }
    return true;
}

// Combines two paths node-by-node (sampled, same grid) or pointwise (analytic).
template <class F>
Path combine(const Path& p, const Path& q, std::size_t out_dim, F f, std::string label) {
    if (p.is_sampled() != q.is_sampled()) {
        throw ValidationError("cannot combine sampled and analytic paths");
    }
    if (p.is_sampled()) {
        if (!(p.grid() == q.grid())) {
            throw ValidationError("cannot combine paths sampled on different grids");
        }
        const std::size_t nodes = p.grid().size();
        std::vector<cplx> out(nodes * out_dim);
        for (std::size_t k = 0; k < nodes; ++k) {
            f(p.node_values(k), q.node_values(k), std::span<cplx>(out).subspan(k * out_dim, out_dim));
        }
        return Path::sampled(p.grid(), out_dim, std::move(out), std::move(label));
    }
    const Interval dp = p.domain();
    const Interval dq = q.domain();
    const Interval dom{std::max(dp.lo, dq.lo), std::min(dp.hi, dq.hi)};
    return Path::analytic(
        out_dim,
        [p, q, out_dim, f](double t) {
            const CVec a = p(t);
            const CVec b = q(t);
            CVec out(out_dim);
            f(std::span<const cplx>(a), std::span<const cplx>(b), std::span<cplx>(out));
            return out;
        },
        std::move(label), dom);
}

template <class F>
Path map_values(const Path& p, std::size_t out_dim, F f, std::string label) {
    if (p.is_sampled()) {
        const std::size_t nodes = p.grid().size();
        std::vector<cplx> out(nodes * out_dim);
        for (std::size_t k = 0; k < nodes; ++k) {
            f(p.node_values(k), std::span<cplx>(out).subspan(k * out_dim, out_dim));
        }
        return Path::sampled(p.grid(), out_dim, std::move(out), std::move(label));
    }
    return Path::analytic(
        out_dim,
        [p, out_dim, f](double t) {
            const CVec a = p(t);
            CVec out(out_dim);
            f(std::span<const cplx>(a), std::span<cplx>(out));
            return out;
        },
        std::move(label), p.domain());
}

} // namespace

Path Path::analytic(std::size_t dim, Evaluator f, std::string label, Interval domain) {
    if (dim == 0) {
        throw ValidationError("path dimension must be positive");
    }
    if (!f) {
        throw ValidationError("analytic path requires an evaluator");
    }
    if (!(domain.lo < domain.hi)) {
        throw ValidationError("analytic path domain is empty");
    }
    Path p;
    p.dim_ = dim;
    p.eval_ = std::move(f);
    p.label_ = std::move(label);
    p.domain_ = domain;
    return p;
}

Path Path::sampled(TimeGrid grid, std::size_t dim, std::vector<cplx> values, std::string label) {
    if (dim == 0) {
        throw ValidationError("path dimension must be positive");
    }
    if (values.size() != grid.size() * dim) {
        throw ValidationError("sampled path: expected " + std::to_string(grid.size() * dim) +
                              " values, got " + std::to_string(values.size()));
    }
    if (!all_finite(values)) {
        throw NumericalError("sampled path '" + label + "' contains non-finite values");
    }
    Path p;
    p.dim_ = dim;
    p.label_ = std::move(label);
    p.domain_ = Interval{grid.lo(), grid.hi()};
    p.grid_ = grid;
    p.values_ = std::make_shared<const std::vector<cplx>>(std::move(values));
    return p;
}

Interval Path::domain() const noexcept { return domain_; }

const TimeGrid& Path::grid() const {
    if (!grid_) {
        throw ValidationError("path '" + label_ + "' is analytic; a sampled path is required");
    }
    return *grid_;
}

CVec Path::operator()(double t) const {
    if (grid_) {
        const auto k = grid_->index_of(t);
        if (!k) {
            throw ValidationError("sampled path '" + label_ + "' evaluated off-grid or outside its domain at t = " +
                                  std::to_string(t));
        }
        const auto v = node_values(*k);
        return CVec(v.begin(), v.end());
    }
    if (!domain_.contains(t)) {
        throw ValidationError("path '" + label_ + "' evaluated outside its domain at t = " + std::to_string(t));
    }
    CVec v = eval_(t);
    if (v.size() != dim_) {
        throw NumericalError("path '" + label_ + "' evaluator returned wrong dimension");
    }
    if (!all_finite(v)) {
        throw NumericalError("path '" + label_ + "' is non-finite at t = " + std::to_string(t));
    }
    return v;
}

std::span<const cplx> Path::node_values(std::size_t k_node) const {
    return samples().subspan(k_node * dim_, dim_);
}

std::span<const cplx> Path::samples() const {
    if (!values_) {
        throw ValidationError("path '" + label_ + "' is analytic; a sampled path is required");
    }
    return *values_;
}

Path Path::with_holder_exponent(double alpha) const {
    Path p = *this;
    p.holder_ = alpha;
    return p;
}

Path Path::with_label(std::string label) const {
    Path p = *this;
    p.label_ = std::move(label);
    return p;
}

Path sample(const Path& p, const TimeGrid& grid) {
    if (p.is_sampled()) {
        if (p.grid() == grid) {
            return p;
        }
        throw ValidationError("path '" + p.label() + "' is already sampled on a different grid");
    }
    const std::size_t d = p.dim();
    std::vector<cplx> values(grid.size() * d);
    parallel_for(grid.size(), [&](std::size_t k) {
        const CVec v = p(grid.node(k));
        std::copy(v.begin(), v.end(), values.begin() + static_cast<std::ptrdiff_t>(k * d));
    });
    Path out = Path::sampled(grid, d, std::move(values), p.label());
    if (p.holder_exponent()) {
        out = out.with_holder_exponent(*p.holder_exponent());
    }
    return out;
}

Path component(const Path& p, std::size_t k) {
    if (k >= p.dim()) {
        throw ValidationError("component index out of range");
    }
    return map_values(
        p, 1, [k](std::span<const cplx> in, std::span<cplx> out) { out[0] = in[k]; },
        p.label() + "[" + std::to_string(k + 1) + "]");
}

Path stack(std::span<const Path> parts) {
    if (parts.empty()) {
        throw ValidationError("stack: no paths given");
    }
    std::size_t dim = 0;
    for (const Path& p : parts) {
        if (p.is_sampled() != parts.front().is_sampled()) {
            throw ValidationError("stack: mixed sampled and analytic paths");
        }
        if (p.is_sampled() && !(p.grid() == parts.front().grid())) {
            throw ValidationError("stack: paths sampled on different grids");
        }
        dim += p.dim();
    }
    std::vector<Path> owned(parts.begin(), parts.end());
    if (parts.front().is_sampled()) {
        const TimeGrid& g = parts.front().grid();
        std::vector<cplx> values;
        values.reserve(g.size() * dim);
        for (std::size_t k = 0; k < g.size(); ++k) {
            for (const Path& p : owned) {
                const auto v = p.node_values(k);
                values.insert(values.end(), v.begin(), v.end());
            }
        }
        return Path::sampled(g, dim, std::move(values), "stack");
    }
    Interval dom;
    for (const Path& p : owned) {
        dom.lo = std::max(dom.lo, p.domain().lo);
        dom.hi = std::min(dom.hi, p.domain().hi);
    }
    return Path::analytic(
        dim,
        [owned](double t) {
            CVec out;
            for (const Path& p : owned) {
                const CVec v = p(t);
                out.insert(out.end(), v.begin(), v.end());
            }
            return out;
        },
        "stack", dom);
}

Path dot(const Path& p, const Path& q) {
    if (p.dim() != q.dim()) {
        throw ValidationError("dot: dimension mismatch");
    }
    return combine(
        p, q, 1,
        [](std::span<const cplx> a, std::span<const cplx> b, std::span<cplx> out) {
            cplx s = 0.0;
            for (std::size_t k = 0; k < a.size(); ++k) {
                s += a[k] * b[k];
            }
            out[0] = s;
        },
        "(" + p.label() + ")·(" + q.label() + ")");
}

Path linear_combination(cplx alpha, const Path& p, cplx beta, const Path& q) {
    if (p.dim() != q.dim()) {
        throw ValidationError("linear_combination: dimension mismatch");
    }
    return combine(
        p, q, p.dim(),
        [alpha, beta](std::span<const cplx> a, std::span<const cplx> b, std::span<cplx> out) {
            for (std::size_t k = 0; k < a.size(); ++k) {
                out[k] = alpha * a[k] + beta * b[k];
            }
        },
        "lincomb");
}

Path real_part(const Path& p) {
    return map_values(
        p, p.dim(),
        [](std::span<const cplx> in, std::span<cplx> out) {
            for (std::size_t k = 0; k < in.size(); ++k) {
                out[k] = in[k].real();
            }
        },
        "Re " + p.label());
}

Path imag_part(const Path& p) {
    return map_values(
        p, p.dim(),
        [](std::span<const cplx> in, std::span<cplx> out) {
            for (std::size_t k = 0; k < in.size(); ++k) {
                out[k] = in[k].imag();
            }
        },
        "Im " + p.label());
}

} // namespace scalevar
