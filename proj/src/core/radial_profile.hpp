#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "core/params.hpp"

namespace vgl {

// Sampled radial function with first derivative on a graded mesh.  Evaluation
// between nodes is cubic Hermite; below r_min the stored leading power p is
// used (f ~ f(r_min) (r/r_min)^p), above r_max the value saturates.
struct RadialProfile {
    RadialGrid grid;
    std::vector<double> values;
    std::vector<double> derivs;
    double lead_power = 1.0;

    bool empty() const { return values.empty(); }

    int cell_of(double r) const {
        const auto& x = grid.nodes;
        auto it = std::upper_bound(x.begin(), x.end(), r);
        int k = static_cast<int>(it - x.begin()) - 1;
        return std::clamp(k, 0, static_cast<int>(x.size()) - 2);
    }

    double eval(double r) const {
        const auto& x = grid.nodes;
        if (r <= x.front())
            return values.front() * std::pow(r / x.front(), lead_power);
        if (r >= x.back()) return values.back();
        int k = cell_of(r);
        double dr = x[k + 1] - x[k], t = (r - x[k]) / dr;
        double h00 = (1 + 2 * t) * (1 - t) * (1 - t), h10 = t * (1 - t) * (1 - t);
        double h01 = t * t * (3 - 2 * t), h11 = t * t * (t - 1);
        return h00 * values[k] + h10 * dr * derivs[k] + h01 * values[k + 1]
               + h11 * dr * derivs[k + 1];
    }

    double eval_deriv(double r) const {
        const auto& x = grid.nodes;
        if (r <= x.front()) {
            double f = values.front() * std::pow(r / x.front(), lead_power);
            return r > 0.0 ? lead_power * f / r : (lead_power == 1.0 ? derivs.front() : 0.0);
        }
        if (r >= x.back()) return 0.0;
        int k = cell_of(r);
        double dr = x[k + 1] - x[k], t = (r - x[k]) / dr;
        double g00 = (6 * t * t - 6 * t) / dr, g10 = 3 * t * t - 4 * t + 1;
        double g01 = (6 * t - 6 * t * t) / dr, g11 = 3 * t * t - 2 * t;
        return g00 * values[k] + g10 * derivs[k] + g01 * values[k + 1] + g11 * derivs[k + 1];
    }
};

}  // namespace vgl
