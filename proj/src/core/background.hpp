#pragma once

#include <vector>

#include "core/field.hpp"
#include "core/params.hpp"

namespace vgl {

// Vortex points grouped by coincidence (multiplicities as repeated entries).
struct VortexGroup {
    Vec2 center;
    int multiplicity = 1;
};

std::vector<VortexGroup> group_vortices(const std::vector<Vec2>& points);

// Smooth background carrying the prescribed logarithmic zeros:
//   u0   = sum_s ln(|x-p_s|^2 / (1+|x-p_s|^2))
//   g    = sum_s 4 / (1+|x-p_s|^2)^2,     Delta u0 = 4*pi*sum delta_{p_s} - g
//   rho  = -sum_s ln(1+|x-p_s|^2)
//   W    = e^{u0} = prod_s |x-p_s|^2/(1+|x-p_s|^2)   (exact 0 at vortex nodes)
// At nodes coinciding with a vortex center the stored u0 value replaces each
// singular ln|x-p|^2 term by its cell mean ln(h^2) + kLogCellMean, which keeps
// the start of the monotone iteration a discrete supersolution.
class Background {
  public:
    Background(const Grid2D& grid, const std::vector<Vec2>& points);

    const Grid2D& grid() const { return grid_; }
    const std::vector<VortexGroup>& groups() const { return groups_; }
    int N() const { return N_; }

    const ScalarField2D& u0() const { return u0_; }        // regularized at vortex nodes
    const ScalarField2D& g() const { return g_; }
    const ScalarField2D& rho() const { return rho_; }
    const ScalarField2D& W() const { return W_; }
    const ScalarField2D& grad_energy() const { return T1_; }  // W * |grad u0|^2
    const ScalarField2D& Vx() const { return Vx_; }           // W * d(u0)/dx
    const ScalarField2D& Vy() const { return Vy_; }

    // Closed-form point evaluations (independent of the grid sampling).
    double u0_at(double x, double y) const;     // -inf at a vortex center
    double g_at(double x, double y) const;
    double rho_at(double x, double y) const;
    Vec2 grad_u0_at(double x, double y) const;  // singular at centers
    double angle_sum_at(double x, double y) const;  // sum_s arg(z - p_s)
    Vec2 grad_angle_at(double x, double y) const;

    // Nodes inside the square patch |x-p| <= radius*h of any vortex.
    bool in_vortex_patch(int ix, int iy, int radius) const;

  private:
    Grid2D grid_;
    std::vector<VortexGroup> groups_;
    int N_ = 0;
    ScalarField2D u0_, g_, rho_, W_, T1_, Vx_, Vy_;
};

Background build_background(const std::vector<Vec2>& points, const Grid2D& grid);

}  // namespace vgl
