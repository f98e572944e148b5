#pragma once

#include <string>
#include <vector>

#include "core/background.hpp"
#include "core/field.hpp"
#include "core/metric.hpp"
#include "core/params.hpp"

namespace vgl {

struct PlanarOptions {
    double tol = 1e-8;        // sup-norm stopping tolerance (inner and outer)
    int max_outer = 50;
    int max_inner = 500;
    double omega = 1.0;       // outer damping; halved on oscillation
    double linear_rel_tol = 1e-10;
    const ScalarField2D* subsolution_u = nullptr;  // optional ordering check
};

struct PlanarSolution {
    Grid2D grid;
    PhysicalParams params;
    ScalarField2D v;      // regular part, Dirichlet 0 on the box boundary
    ScalarField2D u;      // u0 + v (u0 regularized at vortex nodes)
    ScalarField2D eta;    // log metric factor
    MetricField metric;   // e^eta
    std::vector<double> residual_history;  // sup-change per inner iteration
    int outer_iters = 0;
    int inner_iters_total = 0;
    bool converged = false;
    double kappa_final = 0.0;
    double max_monotonicity_violation = 0.0;
    double max_u = 0.0;
    bool ordering_ok = true;     // u stayed above the provided subsolution
    double residual_algebraic = 0.0;  // sup |Lap_h v - e^eta(e^u - 1) - g|
    double residual_pde = 0.0;        // sup |Lap_h u - e^eta(e^u - 1)|, d(vortex) >= 1
    std::string diagnostics;
};

// Monotone iteration for Lap u = e^eta (e^u - 1) + 4 pi sum delta_{p_s} via the
// substitution u = u0 + v.  Starts at the supersolution u = 0 (v = -u0) and
// descends; the metric is lagged per outer pass.  Requires lambda == 1.
PlanarSolution monotone_solve(const Background& bg, const PhysicalParams& params,
                              const PlanarOptions& opts = {});

// v+ = -u0, the start of the descent (u = u0 + v+ vanishes identically).
ScalarField2D supersolution(const Background& bg);

}  // namespace vgl
