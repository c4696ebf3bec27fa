#include <doctest.h>

#include "scalevar/error.hpp"
#include "scalevar/grid.hpp"
#include "scalevar/scale_ops.hpp"
#include "scalevar/schrodinger.hpp"
#include "support.hpp"

using namespace scalevar;
using scalevar::testing::Gen;
using scalevar::testing::ulps;

namespace {

SchrodingerProblem plane_wave(double omega = 2.0) {
    return SchrodingerProblem::parse("exp(i*(k*q1 - w*t))", "0", 1, 1.0, 1.0, {{"k", 2.0}, {"w", omega}});
}

SchrodingerProblem gaussian(const char* potential = "0.5*q1^2") {
    return SchrodingerProblem::parse("exp(-q1^2/2)*exp(-i*t/2)", potential, 1, 1.0, 1.0);
}

std::vector<CVec> lattice_points() {
    std::vector<CVec> qs;
    for (double x = -2.0; x <= 2.0; x += 0.25) {
        qs.push_back({cplx(x, 0.1 * x)});
    }
    return qs;
}

const std::vector<double> kTimes{0.0, 0.3, 0.7, 1.0};

} // namespace

TEST_CASE("problem construction") {
    const SchrodingerProblem p = SchrodingerProblem::parse("exp(i*q1)", "0", 1, 3.0, 2.0);
    CHECK(p.gamma() == 0.75);
    CHECK_THROWS_AS(SchrodingerProblem::parse("exp(i*q1)", "0", 1, 0.0, 1.0), ValidationError);
    CHECK_THROWS_AS(SchrodingerProblem::parse("exp(i*q1)", "0", 1, 1.0, -1.0), ValidationError);
    CHECK_THROWS_AS(SchrodingerProblem::parse("exp(i*q1)", "v1", 1, 1.0, 1.0), ValidationError);
    CHECK_THROWS_AS(SchrodingerProblem::parse("exp(i*q1)", "t", 1, 1.0, 1.0), ValidationError);
}

TEST_CASE("residual vanishes on closed-form solutions") {
    const auto qs = lattice_points();
    CHECK(schrodinger_residual(plane_wave(), kTimes, qs).max_abs < 1e-12);
    CHECK(schrodinger_residual(gaussian(), kTimes, qs).max_abs < 1e-12);
    const ResidualReport r = schrodinger_residual(gaussian(), kTimes, qs);
    CHECK(r.residuals.size() == kTimes.size() * qs.size());
}

TEST_CASE("residual detects a wrong frequency") {
    const SchrodingerProblem wrong = plane_wave(2.5);
    const auto qs = lattice_points();
    const ResidualReport r = schrodinger_residual(wrong, kTimes, qs);
    for (std::size_t i = 0; i < r.residuals.size(); ++i) {
        const double t = kTimes[i / qs.size()];
        const CVec& q = qs[i % qs.size()];
        const double expect = 0.5 * std::abs(wrong.psi_at(t, q));
        CHECK(std::abs(r.residuals[i]) == doctest::Approx(expect).epsilon(1e-12));
    }
}

TEST_CASE("velocity field examples") {
    const SchrodingerProblem pw = plane_wave();
    Gen gen(17);
    for (int i = 0; i < 20; ++i) {
        const CVec q{gen.complex(2)};
        const double t = gen.uniform(0, 1);
        CHECK(std::abs(velocity_field(pw, t, q)[0] - 2.0) < 1e-14);
        CHECK(std::abs(velocity_field(gaussian(), t, q)[0] - kI * q[0]) < 1e-14);
    }
    const SchrodingerProblem flat = SchrodingerProblem::parse("exp(-i*t)", "1", 1, 1.0, 1.0);
    CHECK(velocity_field(flat, 0.4, CVec{cplx(0.3)})[0] == cplx(0.0));
    const SchrodingerProblem nodal = SchrodingerProblem::parse("q1", "0", 1, 1.0, 1.0);
    CHECK_THROWS_AS(velocity_field(nodal, 0.0, CVec{cplx(0.0)}), NumericalError);
}

TEST_CASE("velocity field ignores global phase and normalization") {
    Gen gen(21);
    for (int i = 0; i < 50; ++i) {
        const cplx lambda = gen.complex(3) + 0.1;
        const ParamMap params{{"lam", lambda}};
        const SchrodingerProblem a = SchrodingerProblem::parse("exp(-q1^2/2 + i*q1)*exp(-i*t/2)", "0.5*q1^2", 1, 1.0, 1.0);
        const SchrodingerProblem b =
            SchrodingerProblem::parse("lam*exp(-q1^2/2 + i*q1)*exp(-i*t/2)", "0.5*q1^2", 1, 1.0, 1.0, params);
        const CVec q{gen.complex(1.5)};
        const double t = gen.uniform(0, 1);
        const cplx va = velocity_field(a, t, q)[0];
        CHECK(std::abs(va - velocity_field(b, t, q)[0]) <= 1e-14 * std::abs(va));
    }
}

TEST_CASE("trajectories follow the closed forms") {
    const TimeGrid g = TimeGrid::make(0, 1, 1000, 0.01);
    const Trajectory pw = integrate_trajectory(plane_wave(), {cplx(0.0)}, g);
    CHECK(pw.path(0.0)[0] == cplx(0.0));
    double err = 0.0;
    for (std::size_t k = 0; k < g.size(); ++k) {
        err = std::max(err, std::abs(pw.path.node_values(k)[0] - 2.0 * g.node(k)));
    }
    CHECK(err < 1e-10);

    const Trajectory gs = integrate_trajectory(gaussian(), {cplx(1.0)}, g);
    err = 0.0;
    for (std::size_t k = 0; k < g.size(); ++k) {
        err = std::max(err, std::abs(gs.path.node_values(k)[0] - std::exp(kI * g.node(k))));
    }
    CHECK(err < 1e-8);

    const SchrodingerProblem nodal = SchrodingerProblem::parse("q1", "0", 1, 1.0, 1.0);
    CHECK_THROWS_AS(integrate_trajectory(nodal, {cplx(0.0)}, g), NumericalError);
    CHECK_THROWS_AS(integrate_trajectory(gaussian(), {cplx(1.0), cplx(2.0)}, g), ValidationError);
}

TEST_CASE("rk4 error drops sixteenfold when h halves") {
    const auto max_error = [](std::size_t n) {
        const TimeGrid g = TimeGrid::make(0, 1, n, 0.0);
        const Trajectory tr = integrate_trajectory(gaussian(), {cplx(1.0)}, g);
        double err = 0.0;
        for (std::size_t k = 0; k < g.size(); ++k) {
            err = std::max(err, std::abs(tr.path.node_values(k)[0] - std::exp(kI * g.node(k))));
        }
        return err;
    };
    const double ratio = max_error(20) / max_error(40);
    CHECK(ratio == doctest::Approx(16.0).epsilon(0.1));
}

TEST_CASE("divergent trajectories are reported") {
    const SchrodingerProblem blowup = SchrodingerProblem::parse("exp(i*q1^3)", "0", 1, 1.0, 1.0);
    const TimeGrid g = TimeGrid::make(0, 2, 200, 0.0);
    CHECK_THROWS_AS(integrate_trajectory(blowup, {cplx(1.0)}, g), NumericalError);
}

TEST_CASE("energy constants") {
    const TimeGrid g = TimeGrid::make(0, 1, 1000, 0.01);
    const ScaleParams sp(1e-3, Mu::Zero);

    const SchrodingerProblem pw = plane_wave();
    const EnergyReport e1 = energy_constant(pw, integrate_trajectory(pw, {cplx(0.0)}, g), sp);
    CHECK(std::abs(e1.theorem_form.mean + 2.0) < 1e-9);
    CHECK(std::abs(e1.printed_form.mean + 2.0) < 1e-12);
    CHECK(e1.theorem_form.drift < 1e-6);
    CHECK(e1.printed_form.drift < 1e-6);

    const SchrodingerProblem gs = gaussian();
    const Trajectory tr = integrate_trajectory(gs, {cplx(1.0)}, g);
    const EnergyReport e2 = energy_constant(gs, tr, sp);
    CHECK(std::abs(e2.theorem_form.mean) < 1e-4);
    CHECK(e2.theorem_form.drift < 1e-4);
    CHECK(e2.printed_form.drift > 0.5);
    // printed form along q = e^{it} is q² = e^{2it}
    for (std::size_t i = 0; i < e2.printed_form.node_times.size(); i += 50) {
        const double t = e2.printed_form.node_times[i];
        CHECK(std::abs(e2.printed_form.constant_samples[i] - std::exp(2.0 * kI * t)) < 1e-7);
    }

    // drift < K(ε + h⁴) with K = 1
    CHECK(e2.theorem_form.drift < 1e-3 + std::pow(1e-3, 4));

    const SchrodingerProblem shifted = gaussian("0.5*q1^2 + 3");
    const EnergyReport e3 = energy_constant(shifted, integrate_trajectory(shifted, {cplx(1.0)}, g), sp);
    CHECK(std::abs(e3.theorem_form.mean - (e2.theorem_form.mean - 3.0)) < 1e-12);
    for (std::size_t i = 0; i < e3.theorem_form.constant_samples.size(); ++i) {
        CHECK(std::abs(e3.theorem_form.constant_samples[i] - (e2.theorem_form.constant_samples[i] - 3.0)) < 1e-12);
    }
}

TEST_CASE("one-sided operators bias the gaussian energy at order epsilon") {
    const SchrodingerProblem gs = gaussian();
    const auto drift = [&](std::size_t n, double eps) {
        const Trajectory tr = integrate_trajectory(gs, {cplx(1.0)}, TimeGrid::make(0, 1, n, 0.01));
        return energy_constant(gs, tr, {eps, Mu::MinusI}).theorem_form.drift;
    };
    const double fwd = drift(1000, 1e-3);
    const double half = drift(2000, 5e-4);
    CHECK(fwd > 1e-4);
    CHECK(fwd / half == doctest::Approx(2.0).epsilon(0.05));
}

TEST_CASE("coefficient identity") {
    CHECK(energy_coefficient_gamma(1.0, 1.0) == energy_coefficient_planck(2 * kPi, 1.0));
    Gen gen(1);
    for (int i = 0; i < 100; ++i) {
        const double hbar = gen.uniform(0.1, 10);
        const double m = gen.uniform(0.1, 10);
        CHECK(ulps(energy_coefficient_gamma(hbar, m), energy_coefficient_planck(2 * kPi * hbar, m)) <= 4.0);
    }
}

TEST_CASE("newton lagrangian") {
    const SchrodingerProblem p = SchrodingerProblem::parse("exp(i*q1)", "q1^2", 1, 1.0, 2.0);
    const LagrangianSpec lg = newton_lagrangian(p);
    const CVec q{cplx(3.0)}, v{cplx(2.0)};
    Bindings b;
    b.q = q;
    b.v = v;
    CHECK(eval(lg.lagrangian(), b) == cplx(4.0 - 9.0));
}
