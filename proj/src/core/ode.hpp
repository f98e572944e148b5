#pragma once

#include <functional>

namespace vgl {

// Adaptive Dormand-Prince 5(4) for two-component systems (value, derivative).
// Deterministic: fixed coefficients, fixed controller, no randomness.
class Dp5 {
  public:
    using Rhs = std::function<void(double t, const double* y, double* f)>;

    Dp5(Rhs rhs, double rtol = 1e-10, double atol = 1e-12)
        : rhs_(std::move(rhs)), rtol_(rtol), atol_(atol) {}

    // Advances (t, y) by at most h_cap (> 0), adapting the internal step.
    // Returns false when the step size underflows (stiffness/overflow).
    bool step(double& t, double y[2], double h_cap);

    // Proposed next step from the last accepted error estimate.
    double suggested() const { return h_next_; }
    void reset_step() { h_next_ = 0.0; }

    // One classic RK4 pass with nsub fixed substeps (used for event
    // refinement and per-cell defect checks).
    static void rk4(const Rhs& rhs, double t0, const double y0[2], double h, int nsub,
                    double yout[2]);

  private:
    bool attempt(double t, const double y[2], double h, double ynew[2], double* err) const;

    Rhs rhs_;
    double rtol_, atol_;
    double h_next_ = 0.0;
};

}  // namespace vgl
