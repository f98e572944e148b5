#include "core/poisson.hpp"

#include <cfloat>
#include <cmath>
#include <vector>

#include "core/errors.hpp"

namespace vgl {

namespace {

struct Level {
    Grid2D grid;
    ScalarField2D kappa;
    ScalarField2D w, rhs, res;
};

void smooth_rb(Level& L, int sweeps) {
    const int n = L.grid.n;
    const double h2 = L.grid.h * L.grid.h;
    for (int s = 0; s < sweeps; ++s) {
        for (int color = 0; color < 2; ++color) {
            for (int j = 1; j < n - 1; ++j) {
                int i0 = 1 + ((j + color) & 1);
                for (int i = i0; i < n - 1; i += 2) {
                    double nb = L.w.at(i + 1, j) + L.w.at(i - 1, j) + L.w.at(i, j + 1)
                                + L.w.at(i, j - 1);
                    L.w.at(i, j) = (nb - h2 * L.rhs.at(i, j)) / (4.0 + h2 * L.kappa.at(i, j));
                }
            }
        }
    }
}

void residual(Level& L) {
    const int n = L.grid.n;
    const double ih2 = 1.0 / (L.grid.h * L.grid.h);
    for (int j = 1; j < n - 1; ++j)
        for (int i = 1; i < n - 1; ++i)
            L.res.at(i, j) = L.rhs.at(i, j)
                             - ((L.w.at(i + 1, j) + L.w.at(i - 1, j) + L.w.at(i, j + 1)
                                 + L.w.at(i, j - 1) - 4.0 * L.w.at(i, j)) * ih2
                                - L.kappa.at(i, j) * L.w.at(i, j));
    for (int k = 0; k < n; ++k) {
        L.res.at(k, 0) = L.res.at(k, n - 1) = 0.0;
        L.res.at(0, k) = L.res.at(n - 1, k) = 0.0;
    }
}

// Full-weighting restriction of the residual onto the coarse grid.
void restrict_fw(const Level& fine, Level& coarse) {
    const int nc = coarse.grid.n;
    for (int J = 0; J < nc; ++J) {
        for (int I = 0; I < nc; ++I) {
            int i = 2 * I, j = 2 * J;
            if (I == 0 || J == 0 || I == nc - 1 || J == nc - 1) {
                coarse.rhs.at(I, J) = 0.0;
                continue;
            }
            coarse.rhs.at(I, J) =
                0.25 * fine.res.at(i, j)
                + 0.125 * (fine.res.at(i + 1, j) + fine.res.at(i - 1, j) + fine.res.at(i, j + 1)
                           + fine.res.at(i, j - 1))
                + 0.0625 * (fine.res.at(i + 1, j + 1) + fine.res.at(i - 1, j + 1)
                            + fine.res.at(i + 1, j - 1) + fine.res.at(i - 1, j - 1));
        }
    }
}

// Bilinear prolongation, added into the fine-grid iterate.
void prolong_add(Level& fine, const Level& coarse) {
    const int nc = coarse.grid.n;
    for (int J = 0; J < nc - 1; ++J) {
        for (int I = 0; I < nc - 1; ++I) {
            double c00 = coarse.w.at(I, J), c10 = coarse.w.at(I + 1, J);
            double c01 = coarse.w.at(I, J + 1), c11 = coarse.w.at(I + 1, J + 1);
            int i = 2 * I, j = 2 * J;
            fine.w.at(i, j) += c00;
            fine.w.at(i + 1, j) += 0.5 * (c00 + c10);
            fine.w.at(i, j + 1) += 0.5 * (c00 + c01);
            fine.w.at(i + 1, j + 1) += 0.25 * (c00 + c10 + c01 + c11);
        }
    }
    for (int I = 0; I < nc - 1; ++I) {
        int j = 2 * (nc - 1);
        fine.w.at(2 * I, j) += coarse.w.at(I, nc - 1);
        fine.w.at(2 * I + 1, j) += 0.5 * (coarse.w.at(I, nc - 1) + coarse.w.at(I + 1, nc - 1));
    }
    for (int J = 0; J < nc - 1; ++J) {
        int i = 2 * (nc - 1);
        fine.w.at(i, 2 * J) += coarse.w.at(nc - 1, J);
        fine.w.at(i, 2 * J + 1) += 0.5 * (coarse.w.at(nc - 1, J) + coarse.w.at(nc - 1, J + 1));
    }
    fine.w.at(2 * (nc - 1), 2 * (nc - 1)) += coarse.w.at(nc - 1, nc - 1);
}

void vcycle(std::vector<Level>& levels, std::size_t l, const PoissonOptions& opts) {
    Level& L = levels[l];
    if (l + 1 == levels.size()) {
        smooth_rb(L, 200);  // coarsest grids are tiny; near-exact solve
        return;
    }
    smooth_rb(L, opts.pre_smooth);
    residual(L);
    Level& C = levels[l + 1];
    restrict_fw(L, C);
    C.w = ScalarField2D(C.grid, 0.0);
    vcycle(levels, l + 1, opts);
    prolong_add(L, C);
    smooth_rb(L, opts.post_smooth);
}

}  // namespace

ScalarField2D solve_shifted_poisson(const ScalarField2D& rhs, const ScalarField2D& kappa,
                                    const ScalarField2D* boundary, const PoissonOptions& opts,
                                    PoissonStats* stats) {
    const Grid2D g = rhs.grid();
    if (!kappa.grid().same_as(g))
        throw Error(ErrorCode::invalid_argument, "kappa grid mismatch");
    if (min_value(kappa) < 0.0)
        throw Error(ErrorCode::invalid_argument, "kappa must be nonnegative");

    std::vector<Level> levels;
    levels.push_back({g, kappa, ScalarField2D(g, 0.0), rhs, ScalarField2D(g, 0.0)});
    while (true) {
        const Grid2D& fg = levels.back().grid;
        if (fg.n < 9 || (fg.n - 1) % 2 != 0) break;
        Grid2D cg;
        cg.n = (fg.n - 1) / 2 + 1;
        cg.R = fg.R;
        cg.h = 2.0 * fg.R / (cg.n - 1);
        ScalarField2D ck(cg, 0.0);
        for (int J = 0; J < cg.n; ++J)
            for (int I = 0; I < cg.n; ++I) ck.at(I, J) = levels.back().kappa.at(2 * I, 2 * J);
        levels.push_back({cg, ck, ScalarField2D(cg, 0.0), ScalarField2D(cg, 0.0),
                          ScalarField2D(cg, 0.0)});
    }

    Level& top = levels.front();
    if (boundary) {
        const int n = g.n;
        for (int k = 0; k < n; ++k) {
            top.w.at(k, 0) = boundary->at(k, 0);
            top.w.at(k, n - 1) = boundary->at(k, n - 1);
            top.w.at(0, k) = boundary->at(0, k);
            top.w.at(n - 1, k) = boundary->at(n - 1, k);
        }
    }

    double rhs_norm = sup_norm(rhs);
    double bnorm = boundary ? sup_norm(*boundary) : 0.0;
    if (rhs_norm == 0.0 && bnorm == 0.0) {
        if (stats) *stats = {0, 0.0, 0.0, false};
        return top.w;
    }
    const double target = opts.rel_tol * std::max(rhs_norm, bnorm / (g.h * g.h));

    std::vector<double> history;
    double res_norm = HUGE_VAL;
    for (int cycle = 1; cycle <= opts.max_cycles; ++cycle) {
        vcycle(levels, 0, opts);
        residual(top);
        res_norm = sup_norm(top.res);
        history.push_back(res_norm);
        if (res_norm <= target) {
            if (stats) *stats = {cycle, res_norm, rhs_norm, false};
            return top.w;
        }
        // Contract: at least a factor 100 of reduction per ~100 sweeps
        // (about 20 V(2,2) cycles); otherwise the solve has stalled.
        if (history.size() >= 20 && res_norm > 1e-2 * history[history.size() - 20]) {
            double floor = 64.0 * DBL_EPSILON
                           * (4.0 / (g.h * g.h) + max_value(kappa)) * sup_norm(top.w)
                           + 16.0 * DBL_EPSILON * rhs_norm;
            if (res_norm <= floor) {
                if (stats) *stats = {cycle, res_norm, rhs_norm, true};
                return top.w;  // converged to the roundoff floor
            }
            throw NumericError("LinearSolveStall: residual reduction below contract "
                               "(residual " + std::to_string(res_norm) + ", target "
                               + std::to_string(target) + ")");
        }
    }
    throw NumericError("LinearSolveStall: cycle budget exhausted (residual "
                       + std::to_string(res_norm) + ", target " + std::to_string(target) + ")");
}

ScalarField2D solve_shifted_poisson(const ScalarField2D& rhs, double kappa,
                                    const ScalarField2D* boundary, const PoissonOptions& opts,
                                    PoissonStats* stats) {
    ScalarField2D k(rhs.grid(), kappa);
    return solve_shifted_poisson(rhs, k, boundary, opts, stats);
}

}  // namespace vgl
