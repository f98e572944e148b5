#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "core/background.hpp"
#include "core/constants.hpp"
#include "core/errors.hpp"
#include "core/metric.hpp"
#include "core/params.hpp"

using namespace vgl;

TEST_CASE("G = 0 gives the constant field g0 exactly") {
    PhysicalParams p;
    p.g0 = 0.37;
    p.points = {{0.0, 0.0}};
    Grid2D g = make_grid(8.0, 65, p.points);
    Background bg(g, p.points);
    ScalarField2D v(g, -0.2);
    MetricField m = metric_factor_from_v(bg, v, p);
    CHECK(m.values.at(3, 5) == 0.37);
    CHECK(max_value(m.values) == 0.37);
    CHECK(min_value(m.values) == 0.37);
}

TEST_CASE("vacuum (no vortices, u = 0): e^eta = g0 e^{-4 pi G}") {
    PhysicalParams p;
    p.G = 0.02;
    Grid2D g = make_grid(6.0, 33, {});
    Background bg(g, {});
    ScalarField2D u(g, 0.0);
    MetricField m = metric_factor(u, p);
    double want = std::exp(-kFourPi * 0.02);
    CHECK(max_value(m.values) == doctest::Approx(want).epsilon(1e-14));
    CHECK(min_value(m.values) == doctest::Approx(want).epsilon(1e-14));
}

TEST_CASE("single vortex with u = u0: closed form ((1/2) e^{-1/2})^{4 pi G} at r = 1") {
    PhysicalParams p;
    p.G = 0.011;
    p.points = {{0.0, 0.0}};
    Grid2D g = make_grid(8.0, 129, p.points);
    Background bg(g, p.points);
    ScalarField2D u = bg.u0();
    MetricField m = metric_factor(u, p);
    int c = g.center(), k = static_cast<int>(std::round(1.0 / g.h));
    double want = std::pow(0.5 * std::exp(-0.5), kFourPi * p.G);
    CHECK(m.values.at(c + k, c) == doctest::Approx(want).epsilon(1e-12));
}

TEST_CASE("metric is finite and positive at vortex nodes (cancellation)") {
    PhysicalParams p;
    p.G = 0.01;
    p.points = {{0.0, 0.0}, {0.0, 0.0}, {1.25, 0.0}};
    Grid2D g = make_grid(10.0, 161, p.points);
    Background bg(g, p.points);
    ScalarField2D v(g, 0.1);
    MetricField m = metric_factor_from_v(bg, v, p);
    CHECK(min_value(m.values) > 0.0);
    for (double val : m.values.data()) CHECK(std::isfinite(val));
    // value at the double zero from the regularized identity: only rho and v
    // survive up to the O(h^4) cell-mean residue of e^u
    int c = g.center();
    double rho = bg.rho().at(c, c);
    double want = std::exp(kFourPi * p.G * (0.1 + rho - 0.0));
    CHECK(m.values.at(c, c) == doctest::Approx(want).epsilon(1e-5));
}

TEST_CASE("NonFiniteMetric guards overflow") {
    PhysicalParams p;
    p.G = 0.02;
    p.points = {{0.0, 0.0}};
    Grid2D g = make_grid(8.0, 33, p.points);
    Background bg(g, p.points);
    ScalarField2D v(g, 1e5);  // absurd regular part: exp overflows
    CHECK_THROWS_WITH_AS(metric_factor_from_v(bg, v, p), doctest::Contains("NonFiniteMetric"),
                         NumericError);
}

TEST_CASE("Gauss curvature: constants are exactly flat") {
    Grid2D g = make_grid(5.0, 33, {});
    ScalarField2D eta(g, -0.7);
    CHECK(sup_norm(gauss_curvature(eta)) == 0.0);
}

TEST_CASE("Gauss curvature: round sphere of radius 2 has K = 1 to O(h^2)") {
    for (int n : {65, 129}) {
        Grid2D g = make_grid(2.0, n, {});
        ScalarField2D eta(g);
        for (int j = 0; j < g.n; ++j)
            for (int i = 0; i < g.n; ++i) {
                double r2 = g.x(i) * g.x(i) + g.y(j) * g.y(j);
                eta.at(i, j) = -2.0 * std::log(1.0 + 0.25 * r2);
            }
        ScalarField2D K = gauss_curvature(eta);
        double worst = 0.0;
        for (int j = 1; j < g.n - 1; ++j)
            for (int i = 1; i < g.n - 1; ++i)
                worst = std::max(worst, std::abs(K.at(i, j) - 1.0));
        CHECK(worst < 2.0 * g.h * g.h);  // closed form: Lap eta = -2/(1+r^2/4)^2
    }
}

TEST_CASE("radial metric: power-law values and domain guard") {
    PhysicalParams flat;
    flat.points = {{0, 0}};
    RadialMetric m0(flat, RadialMetricMode::pure_power_law);
    CHECK(m0(2.34) == 1.0);

    PhysicalParams p;
    p.points = {{0, 0}};
    p.G = 0.5 / (8.0 * kPi);
    p.g0 = 1.0;
    RadialMetric m(p, RadialMetricMode::pure_power_law);
    CHECK(m(4.0) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK_THROWS_AS(m(0.0), Error);
    CHECK_THROWS_AS(m(-1.0), Error);
}

TEST_CASE("radial metric, self-consistent mode: series limits at both ends") {
    PhysicalParams p;
    p.points.assign(2, {0, 0});
    p.G = 0.25 / (8.0 * kPi * 2.0);  // delta = 0.25
    p.g0 = 1.3;
    const double a = 0.6;
    RadialProfile prof;
    prof.grid = RadialGrid::graded(1e-4, 1e3, 500);
    prof.lead_power = 2.0;
    for (double r : prof.grid.nodes) {
        // synthetic |phi| = a r^N / (1 + a r^N) with N = 2
        double s = a * r * r;
        prof.values.push_back(s / (1.0 + s));
        prof.derivs.push_back(2.0 * a * r / ((1.0 + s) * (1.0 + s)));
    }
    RadialMetric m(p, RadialMetricMode::self_consistent);
    m.set_profile(&prof);

    // r -> 0: e^eta -> g0 a^{8 pi G} (regular, no power singularity)
    double r0 = 2e-4;
    double want0 = p.g0 * std::pow(a * a, kFourPi * p.G);
    CHECK(m(r0) == doctest::Approx(want0).epsilon(1e-3));

    // r -> infinity: e^eta -> g0 e^{-4 pi G} r^{-delta}
    double r1 = 800.0;
    double want1 = p.g0 * std::exp(-kFourPi * p.G) * std::pow(r1, -p.delta());
    CHECK(m(r1) == doctest::Approx(want1).epsilon(1e-3));
}
