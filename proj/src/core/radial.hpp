#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "core/metric.hpp"
#include "core/params.hpp"
#include "core/radial_profile.hpp"

namespace vgl {

// Value/derivative pair of a radial function fed into a shooting problem.
struct RadialInput {
    std::function<double(double)> value;
    std::function<double(double)> deriv;

    static RadialInput from_profile(const RadialProfile& p);
    static RadialInput analytic(std::function<double(double)> f,
                                std::function<double(double)> df);
};

// Trajectory classes of the shooting sets: inner_turn = derivative turned
// negative inside (0,1); crossed = reached 1 with nonnegative derivative
// history; reached_rmax = stayed increasing in (0,1) up to r_max.
enum class ShootClass { inner_turn, crossed, reached_rmax, step_failure };

struct ShootingOutcome {
    ShootClass cls = ShootClass::step_failure;
    double exit_r = 0.0;
    double f = 0.0;
    double df = 0.0;
    double ddf = 0.0;  // acceleration at the exit, used to resolve truncated runs
};

struct ShootOptions {
    double bracket_lo = 1e-2;
    double bracket_hi = 10.0;
    double bisect_tol = 1e-12;  // bracket width defining the reported count
    int max_bisect = 200;
    double rtol = 1e-10;
    double atol = 1e-12;
    double tail_tol = 0.02;
    // The bracket is refined past bisect_tol toward the floating-point floor
    // so the separatrix is tracked as deep as possible.  The asymptotic tail
    // takes over at the first node whose vacuum defect |1 - f| falls below
    // nu_anchor, with its amplitude least-squares fitted over the locked
    // window; both keep the fixed-point map smooth in its input.
    double nu_anchor = 1e-4;
};

struct ShootResult {
    double param = 0.0;       // a* (or b*)
    RadialProfile profile;    // graded samples, asymptotic tail past the lock radius
    int bisect_iters = 0;     // iterations until the bracket width < bisect_tol
    double lock_r = 0.0;      // graft radius
    double lock_defect = 0.0; // |1 - f| there
    ShootingOutcome last;
};

// Local series u = a r^N (+ one Picard pass of the integral form); returns
// (u, u').  The v input only needs values; lambda may be zero.
std::pair<double, double> local_series_u(double a, double r, const RadialInput& v,
                                         const PhysicalParams& p, const RadialMetric& em);
std::pair<double, double> local_series_v(double b, double r, const RadialInput& u,
                                         const PhysicalParams& p, const RadialMetric& em);

// Integrates the u-equation (respectively v-equation) outward from the series
// region, classifying the trajectory with event refinement.
ShootingOutcome integrate_u(double a, const RadialInput& v, const PhysicalParams& p,
                            const RadialMetric& em, double r_max, const ShootOptions& opts = {});
ShootingOutcome integrate_v(double b, const RadialInput& u, const PhysicalParams& p,
                            const RadialMetric& em, double r_max, const ShootOptions& opts = {});

// Bisection between the inner_turn and crossed classes; throws
// ValidationError("BracketNotFound") / NumericError("TailNotReached").
ShootResult shoot_u(const RadialInput& v, const PhysicalParams& p, const RadialMetric& em,
                    const RadialGrid& grid, const ShootOptions& opts = {});
ShootResult shoot_v(const RadialInput& u, const PhysicalParams& p, const RadialMetric& em,
                    const RadialGrid& grid, const ShootOptions& opts = {});

struct RadialOptions {
    // Default stopping tolerance sits above the ~1e-8 evaluation noise of the
    // composed shoot-shoot map (separatrix tracking near the graft anchor).
    double tol = 1e-7;
    int max_iter = 50;
    double omega = 1.0;
    RadialMetricMode metric_mode = RadialMetricMode::pure_power_law;
    double r_min = 1e-3;
    double r_max = 1e3;
    int nodes = 700;
    ShootOptions shoot;
};

struct RadialSolution {
    RadialGrid grid;
    PhysicalParams params;
    RadialOptions options;
    RadialProfile u, v;          // |phi| and gauge profile
    double a_star = 0.0, b_star = 0.0;
    int outer_iters = 0;
    bool converged = false;
    double residual_u = 0.0, residual_v = 0.0;  // per-cell defect residuals
    double alpha_fit = 0.0, alpha_ci = 0.0;     // 1-u ~ r^-alpha
    double beta_fit = 0.0, beta_ci = 0.0;       // 1-v ~ r^-beta
    std::vector<double> change_history;
    std::string diagnostics;

    double metric_at(double r) const;  // e^{eta(r)} with the final profiles
};

// Damped Picard iteration on T: v -> shoot_v(shoot_u(v)).
RadialSolution fixed_point_solve(const PhysicalParams& p, const RadialOptions& opts = {},
                                 const RadialProfile* v_init = nullptr);

struct PropertyCheck {
    enum class Status { pass, fail, outside_hypothesis, inconclusive };
    std::string name;
    Status status = Status::pass;
    std::string detail;
};

struct PropertyReport {
    std::vector<PropertyCheck> checks;
    bool ok() const {
        for (const auto& c : checks)
            if (c.status == PropertyCheck::Status::fail) return false;
        return true;
    }
};

PropertyReport verify_radial_properties(const RadialSolution& sol);
PropertyReport verify_radial_profiles(const RadialProfile& u, const RadialProfile& v,
                                      const PhysicalParams& p, double alpha, double alpha_ci,
                                      double beta, double beta_ci);

// Least-squares power-law fit of samples (r_i, f_i > 0): returns (exponent,
// 95% half-width) for |f| ~ r^{-exponent}.
std::pair<double, double> power_law_fit(const std::vector<double>& r,
                                        const std::vector<double>& f);

}  // namespace vgl
