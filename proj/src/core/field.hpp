#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "core/errors.hpp"

namespace vgl {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

// Uniform square grid over [-R,R]^2, n nodes per axis, origin on-grid (n odd).
struct Grid2D {
    double R = 0.0;
    int n = 0;
    double h = 0.0;

    double x(int i) const { return -R + i * h; }
    double y(int j) const { return -R + j * h; }
    int center() const { return (n - 1) / 2; }
    std::size_t size() const { return static_cast<std::size_t>(n) * n; }
    bool same_as(const Grid2D& o) const { return n == o.n && R == o.R; }
};

// Real scalar field sampled on a Grid2D, row-major (y-major) storage.
class ScalarField2D {
  public:
    ScalarField2D() = default;
    ScalarField2D(const Grid2D& g, double fill = 0.0) : grid_(g), data_(g.size(), fill) {}

    const Grid2D& grid() const { return grid_; }
    int n() const { return grid_.n; }
    double h() const { return grid_.h; }

    double& at(int ix, int iy) { return data_[static_cast<std::size_t>(iy) * grid_.n + ix]; }
    double at(int ix, int iy) const { return data_[static_cast<std::size_t>(iy) * grid_.n + ix]; }

    std::vector<double>& data() { return data_; }
    const std::vector<double>& data() const { return data_; }

  private:
    Grid2D grid_;
    std::vector<double> data_;
};

double sup_norm(const ScalarField2D& f);
double max_value(const ScalarField2D& f);
double min_value(const ScalarField2D& f);

// 5-point Laplacian on interior nodes; boundary ring left as zero.
ScalarField2D laplacian5(const ScalarField2D& f);

// Laplacian with one-sided (second-order) second differences on the boundary
// ring, centered 5-point elsewhere.
ScalarField2D laplacian5_onesided(const ScalarField2D& f);

// Fourth-order nine-point (long-stencil) Laplacian; valid two rings in from
// the boundary, zero elsewhere.  Used as the independent discretization for
// residual certificates.
ScalarField2D laplacian4th(const ScalarField2D& f);

// Composite trapezoidal rule over the full grid (corner/edge weights 1/4, 1/2).
double trapezoid(const ScalarField2D& f);

// Trapezoid over every second node (step 2h); used for Richardson-style
// quadrature error estimates.  Requires n odd.
double trapezoid_coarse(const ScalarField2D& f);

inline double quadrature_error_estimate(double fine, double coarse) {
    return std::abs(fine - coarse) / 3.0;  // trapezoid is O(h^2)
}

}  // namespace vgl
