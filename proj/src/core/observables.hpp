#pragma once

#include <optional>
#include <string>
#include <vector>

#include "core/background.hpp"
#include "core/planar.hpp"
#include "core/radial.hpp"

namespace vgl {

// Gauge-theoretic fields rebuilt from a converged planar solution.  The gauge
// potential is assembled from the closed-form cancellation of the phase and
// modulus singularities, so every stored field is regular.
struct GaugeFields {
    ScalarField2D phi_re, phi_im;  // phi = e^{u/2 + i sum arg(z - p_s)}
    ScalarField2D A1, A2;
    ScalarField2D F12;             // centered curl of (A1, A2)
    ScalarField2D J12;             // current density, reduced (bounded) form
    ScalarField2D dphi_cov;        // |D1 phi|^2 + |D2 phi|^2, covariant route
    ScalarField2D dphi_red;        // 1/2 e^u |grad u|^2, reduced route
    double branch_mismatch = 0.0;  // sup |cov - red| away from vortices
};

// Throws NumericError("BranchCutArtifact") when the two |D phi|^2 routes
// disagree by more than 1e-4 away from the vortex cores.
GaugeFields reconstruct_fields(const PlanarSolution& sol, const Background& bg);

struct Quantity {
    double value = 0.0;
    double error = 0.0;  // quadrature error estimate (Richardson) + model terms
    bool computed = false;
};

// First-order compensation of the Dirichlet truncation: the box boundary
// carries |u0| ~ N/R^2 instead of 0, which biases flux-type quadratures by
// C_L = 1/2 \oint (-u0) sqrt(e^{eta+u}) ds.
double boundary_layer_correction(const PlanarSolution& sol, const Background& bg);

Quantity magnetic_flux(const PlanarSolution& sol, const Background& bg, bool upper_sign = true);
Quantity total_energy(const PlanarSolution& sol, const Background& bg);
Quantity total_curvature(const PlanarSolution& sol, const Background& bg);
Quantity current_flux(const PlanarSolution& sol, const Background& bg, bool upper_sign = true);

// Second-route checks.
double magnetic_flux_from_curl(const GaugeFields& f);        // plain quadrature of F12
double boundary_circulation(const GaugeFields& f, int ring); // loop integral of A
double total_energy_reduced_route(const PlanarSolution& sol, const Background& bg,
                                  const GaugeFields& f);

// Radial observables.
double magnetic_flux_radial(const RadialSolution& sol);      // 2 pi N (v(rmax)-v(rmin))
double flux_quadrature_radial(const RadialSolution& sol);    // Hermite-exact derivative quad
Quantity total_energy_radial(const RadialSolution& sol);

// Least-squares log-log slope of binned |field| magnitudes on an annulus.
// Bins are radial shells of width ~2h; fit_monotone_prefix restricts the fit
// to the decreasing prefix (throws NumericError("NonMonotoneTail") if shorter
// than min_bins when strict).
struct DecayFit {
    double exponent = 0.0;
    double ci = 0.0;  // 95% half-width
    int bins_used = 0;
    bool valid = false;
};
DecayFit decay_fit(const std::vector<double>& r, const std::vector<double>& value, bool strict);
DecayFit field_decay_fit(const ScalarField2D& field, double r_lo, double r_hi, bool strict);
// Slope difference of two fields fitted on identical bins (layer effects cancel).
double decay_offset(const ScalarField2D& a, const ScalarField2D& b, double r_lo, double r_hi);
// Log-log slope of eta against r on the annulus (metric asymptotics).
std::pair<double, double> eta_slope(const ScalarField2D& eta, double r_lo, double r_hi);

struct DecayReport {
    DecayFit b_u, b_grad, b_F12;
    double offset_F12_u = 0.0;      // expected 8 pi G N
    double eta_slope = 0.0;         // expected -8 pi G N
    double eta_slope_ci = 0.0;
};

struct ObservableReport {
    bool radial = false;
    bool converged = false;
    Quantity flux, energy, total_curvature, deficit_angle, current_flux;
    double current_flux_from_energy = 0.0;       // E - Phi route
    double current_flux_discrepancy = 0.0;       // |direct - (E - Phi)|
    double current_flux_identity_residual = 0.0; // |2E - (flux + current_flux)|
    DecayReport decay;
    double alpha_fit = 0.0, alpha_ci = 0.0;  // radial only
    double beta_fit = 0.0, beta_ci = 0.0;
    std::vector<std::string> notes;
};

ObservableReport build_report(const PlanarSolution& sol, const Background& bg,
                              bool upper_sign = true);
ObservableReport build_report(const RadialSolution& sol);

// Winding number of phi along the square lattice loop `ring` nodes in from
// the boundary (phase accumulation / 2 pi).
double winding_number(const GaugeFields& f, int ring);

}  // namespace vgl
