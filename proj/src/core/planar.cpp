#include "core/planar.hpp"

#include <cmath>
#include <sstream>

#include "core/errors.hpp"
#include "core/poisson.hpp"

namespace vgl {

namespace {

double min_distance_to_vortex(const Background& bg, double x, double y) {
    double d = HUGE_VAL;
    for (const auto& g : bg.groups()) {
        double dx = x - g.center.x, dy = y - g.center.y;
        d = std::min(d, std::hypot(dx, dy));
    }
    return d;
}

// Discretely harmonized background: u0d solves Lap_h u0d = src - g with the
// vortex charges 4 pi m spread bilinearly onto the lattice and the analytic
// trace on the boundary.  Pairing it with the effective source
// g_h = src - Lap_h u0d makes the descent start an exact discrete
// supersolution: the analytic-sampled u0 satisfies its Laplacian identity
// only up to a sign-indefinite O(h^2) quartic term, which otherwise leaks
// into the first increments.
struct DiscreteBackground {
    ScalarField2D u0d;
    ScalarField2D g_h;
};

DiscreteBackground harmonize(const Background& bg, const PlanarOptions& opts) {
    const Grid2D& grid = bg.grid();
    const int n = grid.n;
    ScalarField2D src(grid, 0.0);
    for (const auto& grp : bg.groups()) {
        double fx = (grp.center.x + grid.R) / grid.h;
        double fy = (grp.center.y + grid.R) / grid.h;
        int ix = static_cast<int>(std::floor(fx)), iy = static_cast<int>(std::floor(fy));
        double ax = fx - ix, ay = fy - iy;
        double amp = kFourPi * grp.multiplicity / (grid.h * grid.h);
        src.at(ix, iy) += amp * (1.0 - ax) * (1.0 - ay);
        if (ix + 1 < n) src.at(ix + 1, iy) += amp * ax * (1.0 - ay);
        if (iy + 1 < n) src.at(ix, iy + 1) += amp * (1.0 - ax) * ay;
        if (ix + 1 < n && iy + 1 < n) src.at(ix + 1, iy + 1) += amp * ax * ay;
    }
    ScalarField2D rhs(grid, 0.0);
    for (int j = 1; j < n - 1; ++j)
        for (int i = 1; i < n - 1; ++i) rhs.at(i, j) = src.at(i, j) - bg.g().at(i, j);
    ScalarField2D bc(grid, 0.0);
    for (int k = 0; k < n; ++k) {
        bc.at(k, 0) = bg.u0().at(k, 0);
        bc.at(k, n - 1) = bg.u0().at(k, n - 1);
        bc.at(0, k) = bg.u0().at(0, k);
        bc.at(n - 1, k) = bg.u0().at(n - 1, k);
    }
    PoissonOptions lin;
    lin.rel_tol = opts.linear_rel_tol;
    DiscreteBackground d;
    d.u0d = solve_shifted_poisson(rhs, 0.0, &bc, lin);
    d.g_h = ScalarField2D(grid, 0.0);
    ScalarField2D lap = laplacian5(d.u0d);
    for (int j = 1; j < n - 1; ++j)
        for (int i = 1; i < n - 1; ++i) d.g_h.at(i, j) = src.at(i, j) - lap.at(i, j);
    for (int k = 0; k < n; ++k) {
        d.g_h.at(k, 0) = bg.g().at(k, 0);
        d.g_h.at(k, n - 1) = bg.g().at(k, n - 1);
        d.g_h.at(0, k) = bg.g().at(0, k);
        d.g_h.at(n - 1, k) = bg.g().at(n - 1, k);
    }
    return d;
}

}  // namespace

ScalarField2D supersolution(const Background& bg) {
    ScalarField2D v(bg.grid());
    for (std::size_t k = 0; k < v.data().size(); ++k) v.data()[k] = -bg.u0().data()[k];
    return v;
}

PlanarSolution monotone_solve(const Background& bg, const PhysicalParams& params,
                              const PlanarOptions& opts) {
    if (params.lambda != 1.0)
        throw ValidationError("the planar solver is the self-dual reduction; it requires "
                              "lambda = 1 (got lambda = " + std::to_string(params.lambda) + ")");
    ValidationReport vr = validate(params);
    if (!vr.passed()) throw ValidationError(vr.first_failure());

    const Grid2D grid = bg.grid();
    const int n = grid.n;

    PlanarSolution sol;
    sol.grid = grid;
    sol.params = params;

    // Work in the discretely harmonized convention u = u0d + v: the descent
    // start v = -u0d (with the Dirichlet value 0 on the boundary) is then an
    // exact discrete supersolution, so the iterates are non-increasing to
    // linear-solve accuracy.  The conversion field delta0 carries the O(h^2)
    // offset back to the analytic background convention of the other modules.
    DiscreteBackground db = harmonize(bg, opts);
    ScalarField2D delta0(grid);
    for (std::size_t k = 0; k < delta0.data().size(); ++k)
        delta0.data()[k] = db.u0d.data()[k] - bg.u0().data()[k];

    ScalarField2D v(grid);
    for (std::size_t k = 0; k < v.data().size(); ++k) v.data()[k] = -db.u0d.data()[k];
    for (int k = 0; k < n; ++k) {
        v.at(k, 0) = v.at(k, n - 1) = 0.0;
        v.at(0, k) = v.at(n - 1, k) = 0.0;
    }

    auto exp_u = [&](const ScalarField2D& vv) {
        ScalarField2D e(grid);
        for (std::size_t k = 0; k < e.data().size(); ++k)
            e.data()[k] = std::exp(db.u0d.data()[k] + vv.data()[k]);
        return e;
    };
    auto analytic_v = [&](const ScalarField2D& vv) {
        ScalarField2D va(grid);
        for (std::size_t k = 0; k < va.data().size(); ++k)
            va.data()[k] = vv.data()[k] + delta0.data()[k];
        return va;
    };

    double omega = opts.omega;
    double prev_outer_change = HUGE_VAL;
    int rising = 0;
    std::ostringstream diag;

    PoissonOptions lin;
    lin.rel_tol = opts.linear_rel_tol;

    for (int outer = 1; outer <= opts.max_outer; ++outer) {
        sol.outer_iters = outer;
        MetricField metric = metric_factor_from_v(bg, analytic_v(v), params);
        const ScalarField2D& em = metric.values;
        ScalarField2D v_pass = v;

        bool inner_done = false;
        for (int inner = 1; inner <= opts.max_inner; ++inner) {
            ++sol.inner_iters_total;
            ScalarField2D eu = exp_u(v);

            double kmax = 0.0;
            for (std::size_t k = 0; k < eu.data().size(); ++k)
                kmax = std::max(kmax, em.data()[k] * eu.data()[k]);
            double kappa = 1.05 * kmax;
            sol.kappa_final = kappa;

            // Defect of the v-equation; the increment solve keeps late-stage
            // steps well conditioned so the monotonicity check stays meaningful.
            ScalarField2D lap = laplacian5(v);
            ScalarField2D defect(grid, 0.0);
            for (int j = 1; j < n - 1; ++j)
                for (int i = 1; i < n - 1; ++i)
                    defect.at(i, j) = em.at(i, j) * (eu.at(i, j) - 1.0) + db.g_h.at(i, j)
                                      - lap.at(i, j);

            ScalarField2D c = solve_shifted_poisson(defect, kappa, nullptr, lin);

            double sup_change = 0.0, worst_up = 0.0;
            for (std::size_t k = 0; k < c.data().size(); ++k) {
                sup_change = std::max(sup_change, std::abs(c.data()[k]));
                worst_up = std::max(worst_up, c.data()[k]);
            }
            sol.residual_history.push_back(sup_change);
            if (worst_up > sol.max_monotonicity_violation)
                sol.max_monotonicity_violation = worst_up;
            if (worst_up > 1e-12) {
                std::ostringstream os;
                os << "MonotonicityViolation: inner iterate increased by " << worst_up
                   << " (kappa too small or linear solve failure)";
                throw NumericError(os.str());
            }

            for (std::size_t k = 0; k < v.data().size(); ++k) v.data()[k] += c.data()[k];

            if (opts.subsolution_u) {
                for (std::size_t k = 0; k < v.data().size(); ++k) {
                    double u = db.u0d.data()[k] + v.data()[k];
                    if (u < opts.subsolution_u->data()[k] - 1e-10) { sol.ordering_ok = false; break; }
                }
            }

            if (sup_change < opts.tol) { inner_done = true; break; }
        }
        if (!inner_done) {
            sol.converged = false;
            diag << "inner loop exhausted " << opts.max_inner << " iterations; ";
            break;
        }

        double outer_change = 0.0;
        for (std::size_t k = 0; k < v.data().size(); ++k)
            outer_change = std::max(outer_change, std::abs(v.data()[k] - v_pass.data()[k]));

        if (omega < 1.0)
            for (std::size_t k = 0; k < v.data().size(); ++k)
                v.data()[k] = v_pass.data()[k] + omega * (v.data()[k] - v_pass.data()[k]);

        if (outer_change < opts.tol) { sol.converged = true; break; }

        if (outer_change > prev_outer_change) {
            if (++rising >= 2 && omega > 1.0 / 64.0) {
                omega *= 0.5;
                rising = 0;
                diag << "oscillation detected, omega -> " << omega << "; ";
            }
        } else {
            rising = 0;
        }
        prev_outer_change = outer_change;
    }
    if (!sol.converged && sol.outer_iters >= opts.max_outer)
        diag << "NoConvergence: max_outer = " << opts.max_outer
             << " reached (consider smaller omega); ";

    // Final fields and residual certificates (analytic background convention).
    ScalarField2D eu = exp_u(v);
    ScalarField2D lap_v = laplacian5(v);
    sol.v = analytic_v(v);
    sol.u = ScalarField2D(grid);
    for (std::size_t k = 0; k < v.data().size(); ++k)
        sol.u.data()[k] = db.u0d.data()[k] + v.data()[k];
    sol.eta = eta_field(bg, sol.v, params);
    sol.metric = metric_factor_from_v(bg, sol.v, params);
    sol.max_u = max_value(sol.u);

    // The converged u satisfies its own five-point discretization to the
    // iteration defect; the discretization error itself is certified by the
    // residual under an independent fourth-order Laplacian.
    ScalarField2D lap4_u = laplacian4th(sol.u);
    double res_alg = 0.0, res_pde = 0.0;
    for (int j = 1; j < n - 1; ++j) {
        for (int i = 1; i < n - 1; ++i) {
            double f = sol.metric.values.at(i, j) * (eu.at(i, j) - 1.0);
            res_alg = std::max(res_alg,
                               std::abs(lap_v.at(i, j) - f - db.g_h.at(i, j)));
            bool inner2 = i >= 2 && j >= 2 && i <= n - 3 && j <= n - 3;
            if (inner2 && min_distance_to_vortex(bg, grid.x(i), grid.y(j)) >= 1.0)
                res_pde = std::max(res_pde, std::abs(lap4_u.at(i, j) - f));
        }
    }
    sol.residual_algebraic = res_alg;
    sol.residual_pde = res_pde;
    sol.diagnostics = diag.str();
    return sol;
}

}  // namespace vgl
