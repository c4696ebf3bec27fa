#include <doctest.h>

#include "scalevar/error.hpp"
#include "scalevar/funcspace.hpp"
#include "scalevar/grid.hpp"
#include "scalevar/scale_ops.hpp"
#include "support.hpp"

using namespace scalevar;
using scalevar::testing::Gen;
using scalevar::testing::scalar_path;

TEST_CASE("grid examples") {
    const TimeGrid padded = TimeGrid::make(0, 1, 10, 0.2);
    CHECK(padded.size() == 15);
    CHECK(padded.lo() == doctest::Approx(-0.2));
    CHECK(padded.hi() == doctest::Approx(1.2));
    CHECK(TimeGrid::make(0, 1, 10, 0).size() == 11);
    const TimeGrid rounded = TimeGrid::make(0, 1, 10, 0.25);
    CHECK(rounded.pad_steps() == 3);
    CHECK(rounded.pad() == doctest::Approx(0.3));
}

TEST_CASE("node spacing is h to one rounding unit") {
    Gen gen(11);
    for (int trial = 0; trial < 50; ++trial) {
        const double a = gen.uniform(-5, 5);
        const double b = a + gen.uniform(0.1, 10);
        const auto n = static_cast<std::size_t>(gen.integer(2, 5000));
        const TimeGrid g = TimeGrid::make(a, b, n, gen.uniform(0, 0.5));
        for (std::size_t k = 0; k + 1 < g.size(); k += 1 + g.size() / 97) {
            const double step = g.node(k + 1) - g.node(k);
            const double unit = 4.0 * std::numeric_limits<double>::epsilon() * std::max({std::abs(a), std::abs(b), 1.0});
            CHECK(std::abs(step - g.h()) <= unit);
        }
    }
}

TEST_CASE("weierstrass metadata and validation") {
    const Path w = weierstrass(0.5, 3, 1e-12);
    REQUIRE(w.holder_exponent().has_value());
    CHECK(*w.holder_exponent() == doctest::Approx(std::log(2.0) / std::log(3.0)));
    CHECK(*weierstrass(0.5, 2, 1e-12).holder_exponent() == doctest::Approx(1.0));
    CHECK_THROWS_AS(weierstrass(1.5, 3, 1e-12), ValidationError);
    CHECK_THROWS_AS(weierstrass(0.5, 1.5, 1e-12), ValidationError);
    CHECK_THROWS_AS(weierstrass(0.5, 3, 0), ValidationError);

    // tail 0.5^{N+1}/0.5 < 1e-12 first holds at N = 40
    CHECK(weierstrass_terms(0.5, 1e-12) == 41);

    // direct partial sum as oracle
    double sum = 0.0;
    for (int n = 0; n <= 40; ++n) {
        sum += std::pow(0.5, n) * std::cos(std::pow(3.0, n) * kPi * 0.3);
    }
    CHECK(w(0.3)[0].real() == doctest::Approx(sum).epsilon(1e-9));
    CHECK(w(0.3)[0].imag() == 0.0);
}

TEST_CASE("weierstrass is deterministic") {
    const Path a = weierstrass(0.6, 2.5, 1e-10);
    const Path b = weierstrass(0.6, 2.5, 1e-10);
    Gen gen(3);
    for (int i = 0; i < 100; ++i) {
        const double t = gen.uniform(-1, 2);
        CHECK(a(t)[0] == b(t)[0]);
    }
}

TEST_CASE("holder exponent estimates") {
    const Path line = scalar_path([](double t) { return cplx(t); });
    const double coarse[] = {0.1, 0.05, 0.025};
    CHECK(estimate_holder(line, coarse, 200).alpha == doctest::Approx(1.0).epsilon(0.05));

    const Path w = weierstrass(0.5, 3, 1e-12);
    const double fine[] = {1e-2, 5e-3, 2e-3, 1e-3, 5e-4, 2e-4, 1e-4};
    const HolderEstimate est = estimate_holder(w, fine, 1000);
    CHECK(std::abs(est.alpha - std::log(2.0) / std::log(3.0)) < 0.1);
    CHECK(est.oscillations.size() == 7);

    // |t|^{1/2} near zero: the window maximum sits at t = 0 and is exactly δ^{1/2}
    const Path root = Path::analytic(1, [](double t) { return CVec{std::sqrt(t)}; }, "root", Interval{0, 2});
    CHECK(estimate_holder(root, coarse, 101).alpha == doctest::Approx(0.5).epsilon(1e-9));

    const Path flat = scalar_path([](double) { return cplx(2.0); });
    CHECK_THROWS_WITH_AS(estimate_holder(flat, coarse, 50), doctest::Contains("degenerate oscillation"),
                         ValidationError);
    const double unsorted[] = {0.1, 0.2, 0.05};
    CHECK_THROWS_AS(estimate_holder(line, unsorted, 50), ValidationError);
    const double two[] = {0.1, 0.05};
    CHECK_THROWS_AS(estimate_holder(line, two, 50), ValidationError);
}

TEST_CASE("holder estimate on a sampled path") {
    const TimeGrid g = TimeGrid::make(0, 1, 1000, 0.1);
    const Path p = sample(scalar_path([](double t) { return cplx(t * t); }), g);
    const double deltas[] = {0.01, 0.005, 0.002};
    CHECK(estimate_holder(p, deltas, 100).alpha == doctest::Approx(1.0).epsilon(0.05));
    const double off_grid[] = {0.01, 0.0055, 0.002};
    CHECK_THROWS_AS(estimate_holder(p, off_grid, 100), ValidationError);
}

TEST_CASE("mean function examples") {
    const Path c = scalar_path([](double) { return cplx(3.0, -1.0); });
    for (Side s : {Side::Forward, Side::Backward}) {
        const cplx m = mean_function(c, 0.1, s)(0.4)[0];
        CHECK(std::abs(m - cplx(3.0, -1.0)) < 1e-14);
    }
    const Path line = scalar_path([](double t) { return cplx(t); });
    CHECK(mean_function(line, 0.1, Side::Forward)(0.7)[0].real() == doctest::Approx(0.75).epsilon(1e-14));
    const Path sq = scalar_path([](double t) { return cplx(t * t); });
    CHECK(mean_function(sq, 0.1, Side::Backward)(1.0)[0].real() ==
          doctest::Approx((1.0 - 0.729) / 0.3).epsilon(1e-13));
    CHECK_THROWS_AS(mean_function(line, 0.0, Side::Forward), ValidationError);
}

TEST_CASE("mean function derivative is the one-sided quotient") {
    const Path p = scalar_path([](double t) { return cplx(std::sin(3 * t), std::exp(-t)); });
    Gen gen(5);
    for (int i = 0; i < 40; ++i) {
        const double eps = gen.uniform(1e-3, 0.1);
        const double t = gen.uniform(-1, 1);
        const Side s = gen.coin() ? Side::Forward : Side::Backward;
        const Path m = mean_function(p, eps, s);
        const double h = 1e-5;
        const cplx deriv = (m(t + h)[0] - m(t - h)[0]) / (2 * h);
        CHECK(std::abs(deriv - delta(p, eps, s, t)[0]) < 1e-6);
    }
}
