#include "core/ode.hpp"

#include <algorithm>
#include <cmath>

namespace vgl {

namespace {
// Dormand-Prince coefficients.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                 b6 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                 e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;
}  // namespace

bool Dp5::attempt(double t, const double y[2], double h, double ynew[2], double* err) const {
    double k1[2], k2[2], k3[2], k4[2], k5[2], k6[2], k7[2], tmp[2];
    rhs_(t, y, k1);
    for (int i = 0; i < 2; ++i) tmp[i] = y[i] + h * a21 * k1[i];
    rhs_(t + c2 * h, tmp, k2);
    for (int i = 0; i < 2; ++i) tmp[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
    rhs_(t + c3 * h, tmp, k3);
    for (int i = 0; i < 2; ++i) tmp[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
    rhs_(t + c4 * h, tmp, k4);
    for (int i = 0; i < 2; ++i)
        tmp[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
    rhs_(t + c5 * h, tmp, k5);
    for (int i = 0; i < 2; ++i)
        tmp[i] = y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
    rhs_(t + h, tmp, k6);
    for (int i = 0; i < 2; ++i)
        ynew[i] = y[i] + h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] + b6 * k6[i]);
    rhs_(t + h, ynew, k7);

    double sum = 0.0;
    for (int i = 0; i < 2; ++i) {
        double e = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i]
                        + e7 * k7[i]);
        double sc = atol_ + rtol_ * std::max(std::abs(y[i]), std::abs(ynew[i]));
        sum += (e / sc) * (e / sc);
    }
    *err = std::sqrt(0.5 * sum);
    return std::isfinite(*err) && std::isfinite(ynew[0]) && std::isfinite(ynew[1]);
}

bool Dp5::step(double& t, double y[2], double h_cap) {
    double h = h_next_ > 0.0 ? std::min(h_next_, h_cap) : h_cap;
    const double h_min = 1e-14 * std::max(1.0, std::abs(t));
    for (int tries = 0; tries < 60; ++tries) {
        double ynew[2], err;
        bool finite = attempt(t, y, h, ynew, &err);
        if (finite && err <= 1.0) {
            t += h;
            y[0] = ynew[0];
            y[1] = ynew[1];
            double fac = err > 0.0 ? 0.9 * std::pow(err, -0.2) : 5.0;
            h_next_ = h * std::clamp(fac, 0.2, 5.0);
            return true;
        }
        double fac = finite ? std::clamp(0.9 * std::pow(err, -0.2), 0.1, 0.5) : 0.1;
        h *= fac;
        if (h < h_min) return false;
    }
    return false;
}

void Dp5::rk4(const Rhs& rhs, double t0, const double y0[2], double h, int nsub, double yout[2]) {
    double y[2] = {y0[0], y0[1]};
    double t = t0, dh = h / nsub;
    double k1[2], k2[2], k3[2], k4[2], tmp[2];
    for (int s = 0; s < nsub; ++s) {
        rhs(t, y, k1);
        for (int i = 0; i < 2; ++i) tmp[i] = y[i] + 0.5 * dh * k1[i];
        rhs(t + 0.5 * dh, tmp, k2);
        for (int i = 0; i < 2; ++i) tmp[i] = y[i] + 0.5 * dh * k2[i];
        rhs(t + 0.5 * dh, tmp, k3);
        for (int i = 0; i < 2; ++i) tmp[i] = y[i] + dh * k3[i];
        rhs(t + dh, tmp, k4);
        for (int i = 0; i < 2; ++i)
            y[i] += dh / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        t += dh;
    }
    yout[0] = y[0];
    yout[1] = y[1];
}

}  // namespace vgl
