#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "core/errors.hpp"
#include "core/field.hpp"
#include "core/params.hpp"
#include "core/poisson.hpp"

using namespace vgl;

TEST_CASE("zero source, zero boundary gives the zero field") {
    Grid2D g = make_grid(4.0, 65, {});
    ScalarField2D rhs(g, 0.0);
    ScalarField2D w = solve_shifted_poisson(rhs, 0.0);
    CHECK(sup_norm(w) == 0.0);
}

TEST_CASE("five-point stencil is exact on quadratics (kappa = 0)") {
    Grid2D g = make_grid(3.0, 65, {});
    ScalarField2D truth(g), rhs(g), bc(g);
    for (int j = 0; j < g.n; ++j)
        for (int i = 0; i < g.n; ++i) {
            double x = g.x(i), y = g.y(j);
            truth.at(i, j) = 2.0 * x * x - y * y + 0.5 * x * y + x - 3.0;
            rhs.at(i, j) = 4.0 - 2.0;  // Laplacian of truth
            bc.at(i, j) = truth.at(i, j);
        }
    ScalarField2D w = solve_shifted_poisson(rhs, 0.0, &bc);
    double worst = 0.0;
    for (std::size_t k = 0; k < w.data().size(); ++k)
        worst = std::max(worst, std::abs(w.data()[k] - truth.data()[k]));
    CHECK(worst < 1e-9);
}

TEST_CASE("manufactured solution with kappa = 1 recovered to solver accuracy") {
    // w* = (R^2-x^2)(R^2-y^2)/R^4 vanishes on the boundary and has zero mixed
    // fourth derivatives, so the stencil is exact and the only error is the
    // linear solve itself.
    Grid2D g = make_grid(2.0, 129, {});
    const double R4 = g.R * g.R * g.R * g.R;
    ScalarField2D truth(g), rhs(g);
    for (int j = 0; j < g.n; ++j)
        for (int i = 0; i < g.n; ++i) {
            double x = g.x(i), y = g.y(j);
            double wx = g.R * g.R - x * x, wy = g.R * g.R - y * y;
            truth.at(i, j) = wx * wy / R4;
            rhs.at(i, j) = (-2.0 * wy - 2.0 * wx) / R4 - truth.at(i, j);
        }
    PoissonStats stats;
    ScalarField2D w = solve_shifted_poisson(rhs, 1.0, nullptr, {}, &stats);
    double worst = 0.0;
    for (std::size_t k = 0; k < w.data().size(); ++k)
        worst = std::max(worst, std::abs(w.data()[k] - truth.data()[k]));
    CHECK(worst < 1e-9);
    CHECK(stats.cycles < 30);
}

TEST_CASE("nodewise kappa field is accepted and contracts") {
    Grid2D g = make_grid(5.0, 65, {});
    ScalarField2D rhs(g), kappa(g);
    for (int j = 0; j < g.n; ++j)
        for (int i = 0; i < g.n; ++i) {
            double x = g.x(i), y = g.y(j);
            rhs.at(i, j) = std::exp(-(x * x + y * y));
            kappa.at(i, j) = 1.0 + 0.5 * std::sin(x) * std::sin(y) * 0.9;
        }
    ScalarField2D w = solve_shifted_poisson(rhs, kappa, nullptr);
    // residual check against the operator
    const double ih2 = 1.0 / (g.h * g.h);
    double res = 0.0;
    for (int j = 1; j < g.n - 1; ++j)
        for (int i = 1; i < g.n - 1; ++i) {
            double lap = (w.at(i + 1, j) + w.at(i - 1, j) + w.at(i, j + 1) + w.at(i, j - 1)
                          - 4.0 * w.at(i, j)) * ih2;
            res = std::max(res, std::abs(lap - kappa.at(i, j) * w.at(i, j) - rhs.at(i, j)));
        }
    CHECK(res <= 1.1e-10 * sup_norm(rhs));
    CHECK_THROWS_AS(
        [&] {
            ScalarField2D bad(g, -1.0);
            solve_shifted_poisson(rhs, bad, nullptr);
        }(),
        Error);
}

TEST_CASE("solver is deterministic for a fixed sweep order") {
    Grid2D g = make_grid(5.0, 65, {});
    ScalarField2D rhs(g);
    for (int j = 0; j < g.n; ++j)
        for (int i = 0; i < g.n; ++i) rhs.at(i, j) = std::sin(0.7 * i) * std::cos(0.3 * j);
    ScalarField2D w1 = solve_shifted_poisson(rhs, 0.3);
    ScalarField2D w2 = solve_shifted_poisson(rhs, 0.3);
    CHECK(w1.data() == w2.data());
}

TEST_CASE("stall contract: impossible budget reports LinearSolveStall") {
    Grid2D g = make_grid(4.0, 129, {});
    ScalarField2D rhs(g, 1.0);
    PoissonOptions opts;
    opts.rel_tol = 1e-10;
    opts.max_cycles = 1;  // cannot reach the target in one cycle
    CHECK_THROWS_WITH_AS(solve_shifted_poisson(rhs, 0.0, nullptr, opts),
                         doctest::Contains("LinearSolveStall"), NumericError);
}

TEST_CASE("odd non-power-of-two grids still converge (coarsest fallback)") {
    Grid2D g = make_grid(4.0, 101, {});  // 101 -> 51 -> 26 stops
    ScalarField2D rhs(g);
    for (int j = 0; j < g.n; ++j)
        for (int i = 0; i < g.n; ++i) rhs.at(i, j) = g.x(i) + 2.0 * g.y(j);
    ScalarField2D w = solve_shifted_poisson(rhs, 0.5);
    const double ih2 = 1.0 / (g.h * g.h);
    double res = 0.0;
    for (int j = 1; j < g.n - 1; ++j)
        for (int i = 1; i < g.n - 1; ++i) {
            double lap = (w.at(i + 1, j) + w.at(i - 1, j) + w.at(i, j + 1) + w.at(i, j - 1)
                          - 4.0 * w.at(i, j)) * ih2;
            res = std::max(res, std::abs(lap - 0.5 * w.at(i, j) - rhs.at(i, j)));
        }
    CHECK(res <= 1.1e-10 * sup_norm(rhs));
}
