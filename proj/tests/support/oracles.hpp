#pragma once

// Independent numerical oracles for the test suite.  These deliberately avoid
// the library's integrators and quadratures: fixed-step long-double RK4 and
// adaptive Simpson only.

#include <functional>
#include <utility>
#include <vector>

namespace oracle {

using Fn1 = std::function<long double(long double)>;

// Adaptive Simpson on [a, b] to absolute tolerance tol.
long double adaptive_simpson(const Fn1& f, long double a, long double b, long double tol);

// Integral of f over the square box [-R, R]^2 via nested adaptive Simpson.
double box_integral_2d(const std::function<double(double, double)>& f, double R, double tol);

// Radial u-equation oracle with a frozen v(r) and metric g0 r^{-delta}:
//   u'' + u'/r - N^2 (v-1)^2 u / r^2 - (lambda/2)(u^2-1) u e^eta = 0.
struct RadialOracle {
    double lambda = 1.0;
    double delta = 0.0;
    double g0 = 1.0;
    int N = 1;
    std::function<long double(long double)> v;          // frozen gauge profile
    std::function<long double(long double)> metric;     // optional; default power law

    long double metric_at(long double r) const;

    // 1 = derivative turned negative inside (0,1); 2 = crossed 1; 3 = r_max.
    int classify_u(long double a, long double r_max, long double h0,
                   long double* exit_r = nullptr) const;
    // Bisection for the separating a*; dp = final bracket width.
    long double shoot_u(long double lo, long double hi, long double r_max, long double h0,
                        long double dp) const;

    // Same machinery for the v-equation given a frozen u(r):
    //   v'' - v'/r - u^2 (v-1) e^eta = 0.
    int classify_v(long double b, const std::function<long double(long double)>& u,
                   long double r_max, long double h0, long double* exit_r = nullptr) const;
    long double shoot_v(long double lo, long double hi,
                        const std::function<long double(long double)>& u, long double r_max,
                        long double h0, long double dp) const;
};

// Least-squares slope of y against x (plain linear regression).
double ls_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace oracle
