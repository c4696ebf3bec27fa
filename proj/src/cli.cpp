#include "scalevar/cli.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "scalevar/error.hpp"
#include "scalevar/funcspace.hpp"
#include "scalevar/report_io.hpp"
#include "scalevar/scale_ops.hpp"
#include "scalevar/schrodinger.hpp"
#include "scalevar/varcalc.hpp"

namespace scalevar::cli {

namespace {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

const std::set<std::string, std::less<>> kCommands{"deriv",  "functional", "check-el",    "check-dbr",
                                                   "invariance", "noether", "schrodinger", "holder"};

[[noreturn]] void fail(const std::string& field, const std::string& what) {
    throw ValidationError(field + ": " + what);
}

const json& require(const json& obj, const std::string& prefix, const char* key) {
    const std::string field = prefix.empty() ? key : prefix + "." + key;
    if (!obj.is_object() || !obj.contains(key)) {
        fail(field, "missing required field");
    }
    return obj.at(key);
}

const json* optional_field(const json& obj, const char* key) {
    if (obj.is_object() && obj.contains(key)) {
        return &obj.at(key);
    }
    return nullptr;
}

double as_number(const json& j, const std::string& field) {
    if (!j.is_number()) {
        fail(field, "must be a number");
    }
    const double x = j.get<double>();
    if (!std::isfinite(x)) {
        fail(field, "must be finite");
    }
    return x;
}

std::size_t as_count(const json& j, const std::string& field, std::size_t min) {
    if (!j.is_number_integer() && !j.is_number_unsigned()) {
        fail(field, "must be an integer");
    }
    const auto v = j.get<long long>();
    if (v < static_cast<long long>(min)) {
        fail(field, "must be at least " + std::to_string(min));
    }
    return static_cast<std::size_t>(v);
}

std::string as_string(const json& j, const std::string& field) {
    if (!j.is_string()) {
        fail(field, "must be a string");
    }
    return j.get<std::string>();
}

cplx as_complex(const json& j, const std::string& field) {
    if (j.is_number()) {
        return as_number(j, field);
    }
    if (j.is_array() && j.size() == 2) {
        return {as_number(j[0], field + "[0]"), as_number(j[1], field + "[1]")};
    }
    fail(field, "must be a number or a [re, im] pair");
}

std::vector<std::string> as_string_list(const json& j, const std::string& field) {
    if (j.is_string()) {
        return {j.get<std::string>()};
    }
    if (!j.is_array() || j.empty()) {
        fail(field, "must be a string or a non-empty array of strings");
    }
    std::vector<std::string> out;
    for (std::size_t i = 0; i < j.size(); ++i) {
        out.push_back(as_string(j[i], field + "[" + std::to_string(i) + "]"));
    }
    return out;
}

std::vector<double> as_number_list(const json& j, const std::string& field) {
    if (!j.is_array()) {
        fail(field, "must be an array of numbers");
    }
    std::vector<double> out;
    for (std::size_t i = 0; i < j.size(); ++i) {
        out.push_back(as_number(j[i], field + "[" + std::to_string(i) + "]"));
    }
    return out;
}

Expr parse_field(const std::string& text, std::size_t dim, const ParamMap& params, const std::string& field) {
    try {
        return parse(text, dim, params);
    } catch (const ValidationError& e) {
        fail(field, e.what());
    }
}

void require_finite(double x, const char* what) {
    if (!std::isfinite(x)) {
        throw NumericalError(std::string("non-finite result: ") + what);
    }
}

// Parsed common sections of a config.
struct Experiment {
    std::string command;
    std::string output;
    json problem;
    std::optional<TimeGrid> grid;
    std::optional<ScaleParams> scale;
    ParamMap params;
    std::size_t dim = 1;
};

Experiment load(const json& cfg) {
    if (!cfg.is_object()) {
        fail("config", "must be a JSON object");
    }
    Experiment ex;
    ex.command = as_string(require(cfg, "", "command"), "command");
    if (!kCommands.contains(ex.command)) {
        fail("command", "unknown command '" + ex.command + "'");
    }
    ex.output = as_string(require(cfg, "", "output"), "output");
    if (ex.output.empty()) {
        fail("output", "must not be empty");
    }
    ex.problem = require(cfg, "", "problem");
    if (!ex.problem.is_object()) {
        fail("problem", "must be an object");
    }

    const json& g = require(cfg, "", "grid");
    const double a = as_number(require(g, "grid", "a"), "grid.a");
    const double b = as_number(require(g, "grid", "b"), "grid.b");
    const std::size_t n = as_count(require(g, "grid", "n"), "grid.n", 2);
    const double pad = as_number(require(g, "grid", "pad"), "grid.pad");
    try {
        ex.grid = TimeGrid::make(a, b, n, pad);
    } catch (const ValidationError& e) {
        fail("grid", e.what());
    }

    if (ex.command != "holder") {
        const json& s = require(cfg, "", "scale");
        const double eps = as_number(require(s, "scale", "epsilon"), "scale.epsilon");
        const std::string mu_text = as_string(require(s, "scale", "mu"), "scale.mu");
        Mu mu{};
        try {
            mu = parse_mu(mu_text);
        } catch (const ValidationError& e) {
            fail("scale.mu", e.what());
        }
        try {
            ex.scale.emplace(eps, mu);
            ex.grid->steps_for(eps);
        } catch (const ValidationError& e) {
            fail("scale.epsilon", e.what());
        }
        const double needed = (ex.command == "check-el" || ex.command == "check-dbr") ? 2.0 * eps : eps;
        if (ex.grid->pad() < needed * (1.0 - 1e-9)) {
            fail("grid.pad", "padding " + format_number(ex.grid->pad()) + " is smaller than the required " +
                                 format_number(needed));
        }
    }

    if (const json* p = optional_field(ex.problem, "params")) {
        if (!p->is_object()) {
            fail("problem.params", "must be an object");
        }
        for (const auto& [k, v] : p->items()) {
            ex.params[k] = as_complex(v, "problem.params." + k);
        }
    }
    if (const json* d = optional_field(ex.problem, "dim")) {
        ex.dim = as_count(*d, "problem.dim", 1);
    } else if (const json* path = optional_field(ex.problem, "path"); path && path->is_array()) {
        ex.dim = std::max<std::size_t>(1, path->size());
    }
    return ex;
}

Path load_path(const Experiment& ex) {
    const auto texts = as_string_list(require(ex.problem, "problem", "path"), "problem.path");
    if (texts.size() != ex.dim) {
        fail("problem.path", "expected " + std::to_string(ex.dim) + " component expressions");
    }
    std::vector<Expr> comps;
    for (std::size_t k = 0; k < texts.size(); ++k) {
        const std::string field = "problem.path" + (texts.size() > 1 ? "[" + std::to_string(k) + "]" : "");
        Expr e = parse_field(texts[k], 0, ex.params, field);
        comps.push_back(std::move(e));
    }
    const ParamMap params = ex.params;
    const Path analytic = Path::analytic(
        ex.dim,
        [comps, params](double t) {
            Bindings b;
            b.t = t;
            b.params = &params;
            CVec out;
            for (const Expr& e : comps) {
                out.push_back(eval(e, b));
            }
            return out;
        },
        "path");
    return sample(analytic, *ex.grid);
}

LagrangianSpec load_lagrangian(const Experiment& ex) {
    const std::string text = as_string(require(ex.problem, "problem", "L"), "problem.L");
    return LagrangianSpec::create(parse_field(text, ex.dim, ex.params, "problem.L"), ex.dim, ex.params);
}

SymmetrySpec load_symmetry(const Experiment& ex) {
    const std::string tau = as_string(require(ex.problem, "problem", "tau"), "problem.tau");
    const auto xi = as_string_list(require(ex.problem, "problem", "xi"), "problem.xi");
    if (xi.size() != ex.dim) {
        fail("problem.xi", "expected " + std::to_string(ex.dim) + " components");
    }
    double s_step = SymmetrySpec::kDefaultStep;
    if (const json* s = optional_field(ex.problem, "s_step")) {
        s_step = as_number(*s, "problem.s_step");
        if (!(s_step > 0.0 && s_step <= 0.1)) {
            fail("problem.s_step", "must lie in (0, 0.1]");
        }
    }
    std::vector<Expr> xs;
    for (std::size_t k = 0; k < xi.size(); ++k) {
        xs.push_back(parse_field(xi[k], ex.dim, ex.params, "problem.xi[" + std::to_string(k) + "]"));
    }
    Expr t = parse_field(tau, ex.dim, ex.params, "problem.tau");
    try {
        return SymmetrySpec::create(std::move(t), std::move(xs), s_step);
    } catch (const ValidationError& e) {
        fail("problem", e.what());
    }
}

std::vector<std::string> vector_header(std::size_t dim) {
    std::vector<std::string> h{"t"};
    for (std::size_t k = 1; k <= dim; ++k) {
        h.push_back("re_" + std::to_string(k));
        h.push_back("im_" + std::to_string(k));
    }
    return h;
}

CsvTable vector_table(const std::vector<double>& times, std::span<const cplx> values, std::size_t dim) {
    CsvTable t;
    t.header = vector_header(dim);
    for (std::size_t i = 0; i < times.size(); ++i) {
        std::vector<double> row{times[i]};
        for (std::size_t c = 0; c < dim; ++c) {
            row.push_back(values[i * dim + c].real());
            row.push_back(values[i * dim + c].imag());
        }
        t.rows.push_back(std::move(row));
    }
    return t;
}

CsvTable constant_table(const std::vector<double>& times, const std::vector<cplx>& values) {
    CsvTable t;
    t.header = {"t", "c_re", "c_im"};
    for (std::size_t i = 0; i < times.size(); ++i) {
        t.rows.push_back({times[i], values[i].real(), values[i].imag()});
    }
    return t;
}

void put_complex(ordered_json& j, const std::string& key, cplx z) {
    require_finite(z.real(), key.c_str());
    require_finite(z.imag(), key.c_str());
    j[key + "_re"] = z.real();
    j[key + "_im"] = z.imag();
}

void put_real(ordered_json& j, const std::string& key, double x) {
    require_finite(x, key.c_str());
    j[key] = x;
}

struct Outcome {
    CsvTable csv;
    ordered_json summary;
};

Outcome run_deriv(const Experiment& ex) {
    const Path p = load_path(ex);
    const Path box = scale_derivative_path(p, *ex.scale);
    const TimeGrid& g = box.grid();
    std::vector<double> times(g.size());
    for (std::size_t k = 0; k < g.size(); ++k) {
        times[k] = g.node(k);
    }
    Outcome o;
    o.csv = vector_table(times, box.samples(), box.dim());
    o.summary["nodes"] = g.size();
    if (const json* probe = optional_field(ex.problem, "probe_t")) {
        const double t = as_number(*probe, "problem.probe_t");
        std::vector<double> sweep = default_epsilon_sweep();
        if (const json* s = optional_field(ex.problem, "sweep")) {
            sweep = as_number_list(*s, "problem.sweep");
        }
        double tol = kDefaultSweepTolerance;
        if (const json* s = optional_field(ex.problem, "tolerance")) {
            tol = as_number(*s, "problem.tolerance");
        }
        // analytic copy for the ε-sweep
        const Path analytic = [&] {
            const auto texts = as_string_list(ex.problem.at("path"), "problem.path");
            std::vector<Expr> comps;
            for (const auto& text : texts) {
                comps.push_back(parse_field(text, 0, ex.params, "problem.path"));
            }
            const ParamMap params = ex.params;
            return Path::analytic(comps.size(), [comps, params](double tt) {
                Bindings b;
                b.t = tt;
                b.params = &params;
                CVec out;
                for (const Expr& e : comps) {
                    out.push_back(eval(e, b));
                }
                return out;
            });
        }();
        ordered_json limits = ordered_json::array();
        for (std::size_t c = 0; c < analytic.dim(); ++c) {
            ExtrapolationReport rep;
            try {
                rep = quantum_derivative(analytic, ex.scale->mu(), sweep, tol, t, c);
            } catch (const ValidationError& e) {
                fail("problem", e.what());
            }
            ordered_json l;
            put_complex(l, "limit", rep.limit_estimate);
            l["converged"] = rep.converged;
            if (rep.convergence_rate && std::isfinite(*rep.convergence_rate)) {
                l["convergence_rate"] = *rep.convergence_rate;
            }
            limits.push_back(std::move(l));
        }
        o.summary["probe_t"] = t;
        o.summary["quantum_derivative"] = std::move(limits);
    }
    return o;
}

Outcome run_functional(const Experiment& ex) {
    const Path p = load_path(ex);
    const LagrangianSpec lg = load_lagrangian(ex);
    const NodeSeries integrand = functional_integrand(lg, p, *ex.scale);
    Outcome o;
    o.csv = constant_table(integrand.node_times, integrand.values);
    o.summary["nodes"] = integrand.node_times.size();
    put_complex(o.summary, "value", evaluate_functional(lg, p, *ex.scale));
    return o;
}

Outcome run_residual(const Experiment& ex, bool euler_lagrange) {
    const Path p = load_path(ex);
    const LagrangianSpec lg = load_lagrangian(ex);
    const ResidualReport r = euler_lagrange ? euler_lagrange_residual(lg, p, *ex.scale)
                                            : dubois_reymond_residual(lg, p, *ex.scale);
    Outcome o;
    o.csv = vector_table(r.node_times, r.residuals, r.dim);
    o.summary["nodes"] = r.node_times.size();
    put_real(o.summary, "max_abs", r.max_abs);
    put_real(o.summary, "l2", r.l2);
    return o;
}

Outcome run_invariance(const Experiment& ex) {
    const Path p = load_path(ex);
    const LagrangianSpec lg = load_lagrangian(ex);
    const SymmetrySpec sym = load_symmetry(ex);
    const NodeSeries integrand = invariance_integrand(lg, p, sym, *ex.scale);
    const cplx integral = invariance_integrand_integral(lg, p, sym, *ex.scale);
    const cplx deriv = invariance_derivative(lg, p, sym, *ex.scale);
    Outcome o;
    o.csv = constant_table(integrand.node_times, integrand.values);
    o.summary["nodes"] = integrand.node_times.size();
    put_complex(o.summary, "invariance_derivative", deriv);
    put_complex(o.summary, "integrand_integral", integral);
    put_real(o.summary, "abs_difference", std::abs(deriv - integral));
    return o;
}

Outcome run_noether(const Experiment& ex) {
    const Path p = load_path(ex);
    const LagrangianSpec lg = load_lagrangian(ex);
    const SymmetrySpec sym = load_symmetry(ex);
    const NoetherReport r = noether_constant(lg, p, sym, *ex.scale);
    Outcome o;
    o.csv = constant_table(r.node_times, r.constant_samples);
    o.summary["nodes"] = r.node_times.size();
    put_complex(o.summary, "mean", r.mean);
    put_real(o.summary, "drift", r.drift);
    return o;
}

Outcome run_schrodinger(const Experiment& ex) {
    const json& pr = ex.problem;
    const std::string psi = as_string(require(pr, "problem", "psi"), "problem.psi");
    const std::string u = as_string(require(pr, "problem", "U"), "problem.U");
    const double hbar = as_number(require(pr, "problem", "hbar"), "problem.hbar");
    const double m = as_number(require(pr, "problem", "m"), "problem.m");
    if (!(hbar > 0.0)) {
        fail("problem.hbar", "must be positive");
    }
    if (!(m > 0.0)) {
        fail("problem.m", "must be positive");
    }
    const json& q0j = require(pr, "problem", "q0");
    CVec q0;
    if (q0j.is_array() && !q0j.empty() && (q0j[0].is_array() || ex.dim > 1)) {
        for (std::size_t k = 0; k < q0j.size(); ++k) {
            q0.push_back(as_complex(q0j[k], "problem.q0[" + std::to_string(k) + "]"));
        }
    } else {
        q0.push_back(as_complex(q0j, "problem.q0"));
    }
    if (q0.size() != ex.dim) {
        fail("problem.q0", "expected " + std::to_string(ex.dim) + " components");
    }
    Expr e_psi = parse_field(psi, ex.dim, ex.params, "problem.psi");
    Expr e_u = parse_field(u, ex.dim, ex.params, "problem.U");
    SchrodingerProblem prob = [&] {
        try {
            return SchrodingerProblem::create(std::move(e_psi), std::move(e_u), ex.dim, hbar, m, ex.params);
        } catch (const ValidationError& e) {
            fail("problem", e.what());
        }
    }();

    const Trajectory traj = integrate_trajectory(prob, q0, *ex.grid);
    const ResidualReport res = schrodinger_residual_along(prob, traj);
    const EnergyReport energy = energy_constant(prob, traj, *ex.scale);

    Outcome o;
    const TimeGrid& g = traj.path.grid();
    o.csv.header = vector_header(ex.dim);
    for (const char* col : {"c_thm_re", "c_thm_im", "c_printed_re", "c_printed_im"}) {
        o.csv.header.emplace_back(col);
    }
    for (std::size_t i = 0; i < energy.theorem_form.node_times.size(); ++i) {
        const std::size_t k = g.first_interior() + i;
        std::vector<double> row{g.node(k)};
        for (const cplx& q : traj.path.node_values(k)) {
            row.push_back(q.real());
            row.push_back(q.imag());
        }
        const cplx ct = energy.theorem_form.constant_samples[i];
        const cplx cp = energy.printed_form.constant_samples[i];
        row.insert(row.end(), {ct.real(), ct.imag(), cp.real(), cp.imag()});
        o.csv.rows.push_back(std::move(row));
    }
    o.summary["nodes"] = energy.theorem_form.node_times.size();
    put_real(o.summary, "gamma", prob.gamma());
    put_real(o.summary, "residual_max_abs", res.max_abs);
    put_real(o.summary, "residual_l2", res.l2);
    put_complex(o.summary, "mean_thm", energy.theorem_form.mean);
    put_real(o.summary, "drift_thm", energy.theorem_form.drift);
    put_complex(o.summary, "mean_printed", energy.printed_form.mean);
    put_real(o.summary, "drift_printed", energy.printed_form.drift);
    const double scale = std::max(1.0, std::abs(energy.theorem_form.mean));
    o.summary["energy_forms_agree"] =
        std::abs(energy.theorem_form.mean - energy.printed_form.mean) <= 1e-6 * scale &&
        std::abs(energy.theorem_form.drift - energy.printed_form.drift) <= 1e-6;
    return o;
}

Outcome run_holder(const Experiment& ex) {
    const json& pr = ex.problem;
    Path p = [&]() -> Path {
        if (const json* w = optional_field(pr, "weierstrass")) {
            const double a = as_number(require(*w, "problem.weierstrass", "a"), "problem.weierstrass.a");
            const double b = as_number(require(*w, "problem.weierstrass", "b"), "problem.weierstrass.b");
            double tol = 1e-12;
            if (const json* t = optional_field(*w, "tol")) {
                tol = as_number(*t, "problem.weierstrass.tol");
            }
            try {
                return weierstrass(a, b, tol);
            } catch (const ValidationError& e) {
                fail("problem.weierstrass", e.what());
            }
        }
        return load_path(ex);
    }();
    const auto deltas = as_number_list(require(pr, "problem", "deltas"), "problem.deltas");
    std::size_t samples = 1000;
    if (const json* s = optional_field(pr, "samples")) {
        samples = as_count(*s, "problem.samples", 2);
    }
    HolderEstimate est;
    try {
        est = estimate_holder(p, deltas, samples, Interval{ex.grid->a(), ex.grid->b()});
    } catch (const ValidationError& e) {
        fail("problem", e.what());
    }
    Outcome o;
    o.csv.header = {"delta", "oscillation"};
    for (std::size_t i = 0; i < est.deltas.size(); ++i) {
        o.csv.rows.push_back({est.deltas[i], est.oscillations[i]});
    }
    put_real(o.summary, "alpha", est.alpha);
    put_real(o.summary, "fit_residual", est.fit_residual);
    o.summary["delta_min"] = est.delta_range.first;
    o.summary["delta_max"] = est.delta_range.second;
    if (p.holder_exponent()) {
        o.summary["theoretical_alpha"] = *p.holder_exponent();
    }
    return o;
}

void apply_override(json& cfg, const std::string& assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string::npos || eq == 0) {
        throw ValidationError("--set: expected key=value, got '" + assignment + "'");
    }
    const std::string key = assignment.substr(0, eq);
    const std::string text = assignment.substr(eq + 1);
    json* node = &cfg;
    std::size_t start = 0;
    while (true) {
        const auto dot = key.find('.', start);
        const std::string part = key.substr(start, dot == std::string::npos ? std::string::npos : dot - start);
        if (part.empty()) {
            throw ValidationError("--set: malformed key '" + key + "'");
        }
        if (!node->is_object()) {
            throw ValidationError("--set: '" + key + "' does not address an object field");
        }
        if (dot == std::string::npos) {
            json& slot = (*node)[part];
            if (slot.is_string()) {
                slot = text;
            } else {
                json parsed = json::parse(text, nullptr, false);
                slot = parsed.is_discarded() ? json(text) : parsed;
            }
            return;
        }
        node = &(*node)[part];
        start = dot + 1;
    }
}

} // namespace

int run(const std::filesystem::path& config_path, std::span<const std::string> overrides, std::ostream& out,
        std::ostream& err) {
    try {
        std::ifstream in(config_path, std::ios::binary);
        if (!in) {
            throw std::runtime_error("cannot open config " + config_path.string());
        }
        json cfg = json::parse(in, nullptr, false);
        if (cfg.is_discarded()) {
            throw ValidationError("config: " + config_path.string() + " is not valid JSON");
        }
        for (const auto& o : overrides) {
            apply_override(cfg, o);
        }
        const Experiment ex = load(cfg);

        Outcome o;
        if (ex.command == "deriv") {
            o = run_deriv(ex);
        } else if (ex.command == "functional") {
            o = run_functional(ex);
        } else if (ex.command == "check-el") {
            o = run_residual(ex, true);
        } else if (ex.command == "check-dbr") {
            o = run_residual(ex, false);
        } else if (ex.command == "invariance") {
            o = run_invariance(ex);
        } else if (ex.command == "noether") {
            o = run_noether(ex);
        } else if (ex.command == "schrodinger") {
            o = run_schrodinger(ex);
        } else {
            o = run_holder(ex);
        }
        for (const auto& row : o.csv.rows) {
            for (double x : row) {
                require_finite(x, "CSV value");
            }
        }

        ordered_json summary;
        summary["command"] = ex.command;
        if (ex.scale) {
            summary["epsilon"] = ex.scale->epsilon();
            summary["mu"] = to_string(ex.scale->mu());
        }
        summary.update(o.summary);

        const std::filesystem::path csv_path = ex.output + ".csv";
        const std::filesystem::path summary_path = ex.output + ".summary.json";
        write_file_atomic(csv_path, o.csv.render());
        write_file_atomic(summary_path, summary.dump(2) + "\n");
        out << csv_path.string() << "\n" << summary_path.string() << "\n";
        return kOk;
    } catch (const ValidationError& e) {
        err << "error: " << e.what() << "\n";
        return kValidationError;
    } catch (const NumericalError& e) {
        err << "numerical failure: " << e.what() << "\n";
        return kNumericalFailure;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kIoFailure;
    }
}

} // namespace scalevar::cli
