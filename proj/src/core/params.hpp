#pragma once

#include <string>
#include <vector>

#include "core/constants.hpp"
#include "core/field.hpp"

namespace vgl {

// Physical inputs of a run.  All quantities dimensionless.  N equals the
// number of vortex points counted with multiplicity (coincident entries).
struct PhysicalParams {
    double lambda = 1.0;
    double G = 0.0;
    double g0 = 1.0;
    std::vector<Vec2> points;

    int N() const { return static_cast<int>(points.size()); }
    double delta() const { return 8.0 * kPi * G * N(); }           // metric decay exponent
    double deficit_angle() const { return 8.0 * kPi * kPi * G * N(); }
};

struct ValidationCheck {
    std::string name;
    bool passed = true;
    std::string detail;
};

struct ValidationReport {
    std::vector<ValidationCheck> checks;
    double delta = 0.0;          // 8*pi*G*N
    double deficit_angle = 0.0;  // 8*pi^2*G*N

    bool passed() const {
        for (const auto& c : checks)
            if (!c.passed) return false;
        return true;
    }
    std::string first_failure() const {
        for (const auto& c : checks)
            if (!c.passed) return c.name + ": " + c.detail;
        return {};
    }
};

// Pure admissibility check: lambda > 0, g0 > 0, G >= 0, 4*pi*G*N <= 1.
ValidationReport validate(const PhysicalParams& p);

// Grid construction with the decay-margin rule: every vortex strictly inside
// [-R/2, R/2]^2.  Throws ValidationError ("VortexTooCloseToBoundary", bad n).
Grid2D make_grid(double R, int n, const std::vector<Vec2>& points);

// True when the point sits on a node of g to within 1e-9*h in each coordinate.
bool on_grid_node(const Grid2D& g, const Vec2& p);

// Geometrically graded 1-D mesh on [r_min, r_max].
struct RadialGrid {
    double r_min = 1e-3;
    double r_max = 1e3;
    std::vector<double> nodes;

    static RadialGrid graded(double r_min, double r_max, int count);
    int size() const { return static_cast<int>(nodes.size()); }
};

}  // namespace vgl
