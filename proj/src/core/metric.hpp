#pragma once

#include <functional>

#include "core/background.hpp"
#include "core/field.hpp"
#include "core/params.hpp"
#include "core/radial_profile.hpp"

namespace vgl {

enum class MetricSource { self_consistent, power_law };

// Conformal metric factor e^eta, strictly positive and finite everywhere,
// including at vortex points.
struct MetricField {
    ScalarField2D values;  // e^eta
    MetricSource source = MetricSource::self_consistent;
};

// eta = ln g0 + 4 pi G (v + rho - e^u).  This is exact algebra on the closed
// form g0 (e^{u-e^u} prod |x-p_s|^{-2})^{4 pi G}; the log singularities of u
// cancel against rho, so every node value is regular.
ScalarField2D eta_field(const Background& bg, const ScalarField2D& v, const PhysicalParams& p);

// e^eta from eta, with the G = 0 short-circuit e^eta == g0 exactly.
// Throws NumericError("NonFiniteMetric") when any node is 0, inf, or NaN.
MetricField metric_factor_from_v(const Background& bg, const ScalarField2D& v,
                                 const PhysicalParams& p);

// Public contract form: u is the full field (background plus regular part as
// produced by the planar solver); the background is rebuilt from params.
MetricField metric_factor(const ScalarField2D& u, const PhysicalParams& p);

// Gauss curvature K = -1/2 e^{-eta} Lap(eta); one-sided second differences on
// the boundary ring.
ScalarField2D gauss_curvature(const ScalarField2D& eta);

enum class RadialMetricMode { pure_power_law, self_consistent };

// Radial metric profile e^{eta(r)} used by the lambda > 0 solver.
//   pure_power_law:  g0 r^{-delta}
//   self_consistent: g0 ((f/r^N)^2 e^{-f^2})^{4 pi G} with f the current |phi|
class RadialMetric {
  public:
    RadialMetric(const PhysicalParams& p, RadialMetricMode mode)
        : g0_(p.g0), delta_(p.delta()), four_pi_G_(kFourPi * p.G), N_(p.N()), mode_(mode) {}

    RadialMetricMode mode() const { return mode_; }
    double delta() const { return delta_; }

    // Supplies the |phi| profile for the self-consistent mode.
    void set_profile(const RadialProfile* f) { profile_ = f; }

    double operator()(double r) const;

  private:
    double g0_, delta_, four_pi_G_;
    int N_;
    RadialMetricMode mode_;
    const RadialProfile* profile_ = nullptr;
};

}  // namespace vgl
