#include "core/field.hpp"

#include <algorithm>

namespace vgl {

double sup_norm(const ScalarField2D& f) {
    double m = 0.0;
    for (double v : f.data()) m = std::max(m, std::abs(v));
    return m;
}

double max_value(const ScalarField2D& f) {
    double m = -HUGE_VAL;
    for (double v : f.data()) m = std::max(m, v);
    return m;
}

double min_value(const ScalarField2D& f) {
    double m = HUGE_VAL;
    for (double v : f.data()) m = std::min(m, v);
    return m;
}

ScalarField2D laplacian5(const ScalarField2D& f) {
    const int n = f.n();
    const double ih2 = 1.0 / (f.h() * f.h());
    ScalarField2D out(f.grid(), 0.0);
    for (int j = 1; j < n - 1; ++j)
        for (int i = 1; i < n - 1; ++i)
            out.at(i, j) = (f.at(i + 1, j) + f.at(i - 1, j) + f.at(i, j + 1) + f.at(i, j - 1)
                            - 4.0 * f.at(i, j)) * ih2;
    return out;
}

ScalarField2D laplacian5_onesided(const ScalarField2D& f) {
    const int n = f.n();
    const double ih2 = 1.0 / (f.h() * f.h());
    ScalarField2D out = laplacian5(f);
    auto d2 = [&](int i, int j, bool xdir) {
        auto v = [&](int k) { return xdir ? f.at(k, j) : f.at(i, k); };
        int c = xdir ? i : j;
        // difference forms are exact on constant fields
        if (c == 0)
            return (2.0 * (v(0) - v(1)) - 3.0 * (v(1) - v(2)) + (v(2) - v(3))) * ih2;
        if (c == n - 1)
            return (2.0 * (v(n - 1) - v(n - 2)) - 3.0 * (v(n - 2) - v(n - 3))
                    + (v(n - 3) - v(n - 4))) * ih2;
        return ((v(c + 1) - v(c)) + (v(c - 1) - v(c))) * ih2;
    };
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i)
            if (i == 0 || j == 0 || i == n - 1 || j == n - 1)
                out.at(i, j) = d2(i, j, true) + d2(i, j, false);
    return out;
}

ScalarField2D laplacian4th(const ScalarField2D& f) {
    const int n = f.n();
    const double c = 1.0 / (12.0 * f.h() * f.h());
    ScalarField2D out(f.grid(), 0.0);
    for (int j = 2; j < n - 2; ++j)
        for (int i = 2; i < n - 2; ++i) {
            double dx = -f.at(i - 2, j) + 16.0 * f.at(i - 1, j) - 30.0 * f.at(i, j)
                        + 16.0 * f.at(i + 1, j) - f.at(i + 2, j);
            double dy = -f.at(i, j - 2) + 16.0 * f.at(i, j - 1) - 30.0 * f.at(i, j)
                        + 16.0 * f.at(i, j + 1) - f.at(i, j + 2);
            out.at(i, j) = (dx + dy) * c;
        }
    return out;
}

double trapezoid(const ScalarField2D& f) {
    const int n = f.n();
    double s = 0.0;
    for (int j = 0; j < n; ++j) {
        double wy = (j == 0 || j == n - 1) ? 0.5 : 1.0;
        double row = 0.0;
        for (int i = 0; i < n; ++i) {
            double wx = (i == 0 || i == n - 1) ? 0.5 : 1.0;
            row += wx * f.at(i, j);
        }
        s += wy * row;
    }
    return s * f.h() * f.h();
}

double trapezoid_coarse(const ScalarField2D& f) {
    const int n = f.n();
    if (n % 2 == 0) throw Error(ErrorCode::invalid_argument, "trapezoid_coarse needs odd n");
    const double H = 2.0 * f.h();
    double s = 0.0;
    for (int j = 0; j < n; j += 2) {
        double wy = (j == 0 || j == n - 1) ? 0.5 : 1.0;
        double row = 0.0;
        for (int i = 0; i < n; i += 2) {
            double wx = (i == 0 || i == n - 1) ? 0.5 : 1.0;
            row += wx * f.at(i, j);
        }
        s += wy * row;
    }
    return s * H * H;
}

}  // namespace vgl
