#pragma once

#include "core/field.hpp"

namespace vgl {

struct PoissonOptions {
    double rel_tol = 1e-10;   // stop when ||res||_inf <= rel_tol * ||rhs||_inf
    int max_cycles = 200;
    int pre_smooth = 2;
    int post_smooth = 2;
};

struct PoissonStats {
    int cycles = 0;
    double final_residual = 0.0;
    double rhs_norm = 0.0;
    bool at_roundoff_floor = false;
};

// Solves (Laplacian - kappa) w = rhs on the grid of rhs with Dirichlet data
// given by `boundary` (nullptr = homogeneous).  kappa must be >= 0 nodewise.
// Geometric multigrid V-cycles with red-black Gauss-Seidel smoothing; the
// sweep order is fixed, so results are deterministic.  Throws NumericError
// ("LinearSolveStall") when the residual stops contracting above the
// achievable roundoff floor.
ScalarField2D solve_shifted_poisson(const ScalarField2D& rhs, const ScalarField2D& kappa,
                                    const ScalarField2D* boundary, const PoissonOptions& opts = {},
                                    PoissonStats* stats = nullptr);

// Convenience overload with constant shift.
ScalarField2D solve_shifted_poisson(const ScalarField2D& rhs, double kappa,
                                    const ScalarField2D* boundary = nullptr,
                                    const PoissonOptions& opts = {}, PoissonStats* stats = nullptr);

}  // namespace vgl
