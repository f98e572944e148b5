#include "core/metric.hpp"

#include <cmath>

#include "core/errors.hpp"

namespace vgl {

ScalarField2D eta_field(const Background& bg, const ScalarField2D& v, const PhysicalParams& p) {
    const Grid2D& g = bg.grid();
    ScalarField2D eta(g, std::log(p.g0));
    if (p.G == 0.0) return eta;
    const double c = kFourPi * p.G;
    for (int j = 0; j < g.n; ++j)
        for (int i = 0; i < g.n; ++i) {
            double eu = std::exp(bg.u0().at(i, j) + v.at(i, j));
            eta.at(i, j) += c * (v.at(i, j) + bg.rho().at(i, j) - eu);
        }
    return eta;
}

MetricField metric_factor_from_v(const Background& bg, const ScalarField2D& v,
                                 const PhysicalParams& p) {
    MetricField m;
    m.source = MetricSource::self_consistent;
    if (p.G == 0.0) {
        m.values = ScalarField2D(bg.grid(), p.g0);
        return m;
    }
    ScalarField2D eta = eta_field(bg, v, p);
    m.values = ScalarField2D(bg.grid());
    for (std::size_t k = 0; k < eta.data().size(); ++k) {
        double e = std::exp(eta.data()[k]);
        if (!std::isfinite(e) || e <= 0.0)
            throw NumericError("NonFiniteMetric: metric factor evaluated to "
                               + std::to_string(e));
        m.values.data()[k] = e;
    }
    return m;
}

MetricField metric_factor(const ScalarField2D& u, const PhysicalParams& p) {
    Background bg(u.grid(), p.points);
    ScalarField2D v(u.grid());
    for (std::size_t k = 0; k < v.data().size(); ++k)
        v.data()[k] = u.data()[k] - bg.u0().data()[k];
    return metric_factor_from_v(bg, v, p);
}

ScalarField2D gauss_curvature(const ScalarField2D& eta) {
    ScalarField2D lap = laplacian5_onesided(eta);
    ScalarField2D K(eta.grid());
    for (std::size_t k = 0; k < K.data().size(); ++k)
        K.data()[k] = -0.5 * std::exp(-eta.data()[k]) * lap.data()[k];
    return K;
}

double RadialMetric::operator()(double r) const {
    if (!(r > 0.0)) throw Error(ErrorCode::invalid_argument, "radial metric needs r > 0");
    if (mode_ == RadialMetricMode::pure_power_law || four_pi_G_ == 0.0)
        return delta_ == 0.0 ? g0_ : g0_ * std::pow(r, -delta_);
    if (!profile_ || profile_->empty())
        throw Error(ErrorCode::invalid_argument,
                    "self-consistent radial metric needs a |phi| profile");
    double f = profile_->eval(r);
    double ratio = f / std::pow(r, N_);
    if (!(ratio > 0.0)) {
        // below the sampled range the profile follows f ~ f(r0) (r/r0)^N
        double r0 = profile_->grid.nodes.front();
        ratio = profile_->values.front() / std::pow(r0, N_);
    }
    return g0_ * std::pow(ratio * ratio * std::exp(-f * f), four_pi_G_);
}

}  // namespace vgl
