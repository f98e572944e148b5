#include "support/oracles.hpp"

#include <cmath>

namespace oracle {

namespace {

long double simpson(const Fn1& f, long double a, long double b, long double fa, long double fm,
                    long double fb) {
    return (b - a) / 6.0L * (fa + 4.0L * fm + fb);
}

long double adasim(const Fn1& f, long double a, long double b, long double fa, long double fm,
                   long double fb, long double whole, long double tol, int depth) {
    long double m = 0.5L * (a + b);
    long double lm = 0.5L * (a + m), rm = 0.5L * (m + b);
    long double flm = f(lm), frm = f(rm);
    long double left = simpson(f, a, m, fa, flm, fm);
    long double right = simpson(f, m, b, fm, frm, fb);
    if (depth <= 0 || fabsl(left + right - whole) <= 15.0L * tol)
        return left + right + (left + right - whole) / 15.0L;
    return adasim(f, a, m, fa, flm, fm, left, 0.5L * tol, depth - 1)
           + adasim(f, m, b, fm, frm, fb, right, 0.5L * tol, depth - 1);
}

}  // namespace

long double adaptive_simpson(const Fn1& f, long double a, long double b, long double tol) {
    long double fa = f(a), fb = f(b), fm = f(0.5L * (a + b));
    long double whole = simpson(f, a, b, fa, fm, fb);
    return adasim(f, a, b, fa, fm, fb, whole, tol, 48);
}

double box_integral_2d(const std::function<double(double, double)>& f, double R, double tol) {
    Fn1 outer = [&](long double y) {
        Fn1 inner = [&](long double x) {
            return static_cast<long double>(f(static_cast<double>(x), static_cast<double>(y)));
        };
        return adaptive_simpson(inner, -R, R, tol / (4.0L * R));
    };
    return static_cast<double>(adaptive_simpson(outer, -R, R, tol));
}

long double RadialOracle::metric_at(long double r) const {
    if (metric) return metric(r);
    return g0 * powl(r, -static_cast<long double>(delta));
}

namespace {

template <typename Rhs>
int classify_march(const Rhs& rhs, long double r0, long double f0, long double df0,
                   long double r_max, long double h0, long double* exit_r) {
    long double r = r0, u = f0, du = df0;
    while (r < r_max) {
        long double h = fminl(h0 * r, r_max - r);  // geometric: resolves r^p structure
        long double k1u, k1d, k2u, k2d, k3u, k3d, k4u, k4d;
        rhs(r, u, du, k1u, k1d);
        rhs(r + h / 2, u + h / 2 * k1u, du + h / 2 * k1d, k2u, k2d);
        rhs(r + h / 2, u + h / 2 * k2u, du + h / 2 * k2d, k3u, k3d);
        rhs(r + h, u + h * k3u, du + h * k3d, k4u, k4d);
        u += h / 6 * (k1u + 2 * k2u + 2 * k3u + k4u);
        du += h / 6 * (k1d + 2 * k2d + 2 * k3d + k4d);
        r += h;
        if (exit_r) *exit_r = r;
        if (u >= 1.0L) return 2;
        if (du < 0.0L && u < 1.0L) return 1;
        if (!std::isfinite(static_cast<double>(u))) return -1;
    }
    return 3;
}

}  // namespace

int RadialOracle::classify_u(long double a, long double r_max, long double h0,
                             long double* exit_r) const {
    auto rhs = [&](long double r, long double u, long double du, long double& f0,
                   long double& f1) {
        long double vm1 = v(r) - 1.0L;
        f0 = du;
        f1 = -du / r + static_cast<long double>(N * N) * vm1 * vm1 * u / (r * r)
             + 0.5L * lambda * (u * u - 1.0L) * u * metric_at(r);
    };
    long double r0 = 1e-6L;
    return classify_march(rhs, r0, a * powl(r0, N), a * N * powl(r0, N - 1), r_max, h0, exit_r);
}

long double RadialOracle::shoot_u(long double lo, long double hi, long double r_max,
                                  long double h0, long double dp) const {
    while (hi - lo > dp) {
        long double mid = 0.5L * (lo + hi);
        if (classify_u(mid, r_max, h0) == 1) lo = mid;
        else hi = mid;
    }
    return 0.5L * (lo + hi);
}

int RadialOracle::classify_v(long double b, const std::function<long double(long double)>& u,
                             long double r_max, long double h0, long double* exit_r) const {
    auto rhs = [&](long double r, long double vv, long double dv, long double& f0,
                   long double& f1) {
        long double uu = u(r);
        f0 = dv;
        f1 = dv / r + uu * uu * (vv - 1.0L) * metric_at(r);
    };
    long double r0 = 1e-6L;
    return classify_march(rhs, r0, b * r0 * r0, 2.0L * b * r0, r_max, h0, exit_r);
}

long double RadialOracle::shoot_v(long double lo, long double hi,
                                  const std::function<long double(long double)>& u,
                                  long double r_max, long double h0, long double dp) const {
    while (hi - lo > dp) {
        long double mid = 0.5L * (lo + hi);
        if (classify_v(mid, u, r_max, h0) == 1) lo = mid;
        else hi = mid;
    }
    return 0.5L * (lo + hi);
}

double ls_slope(const std::vector<double>& x, const std::vector<double>& y) {
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < x.size(); ++i) { mx += x[i]; my += y[i]; }
    mx /= x.size();
    my /= x.size();
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    return sxy / sxx;
}

}  // namespace oracle
