#include "core/background.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "core/constants.hpp"

namespace vgl {

std::vector<VortexGroup> group_vortices(const std::vector<Vec2>& points) {
    std::vector<VortexGroup> groups;
    for (const auto& p : points) {
        bool merged = false;
        for (auto& g : groups) {
            if (std::abs(p.x - g.center.x) < 1e-12 && std::abs(p.y - g.center.y) < 1e-12) {
                ++g.multiplicity;
                merged = true;
                break;
            }
        }
        if (!merged) groups.push_back({p, 1});
    }
    return groups;
}

Background::Background(const Grid2D& grid, const std::vector<Vec2>& points)
    : grid_(grid),
      groups_(group_vortices(points)),
      N_(static_cast<int>(points.size())),
      u0_(grid), g_(grid), rho_(grid), W_(grid), T1_(grid), Vx_(grid), Vy_(grid) {
    const double node_tol2 = 1e-18 * grid.h * grid.h;
    const double cell_log = std::log(grid.h * grid.h) + kLogCellMean;

    for (int j = 0; j < grid.n; ++j) {
        for (int i = 0; i < grid.n; ++i) {
            const double x = grid.x(i), y = grid.y(j);

            // nearest group index
            int near = -1;
            double dmin2 = std::numeric_limits<double>::infinity();
            for (std::size_t k = 0; k < groups_.size(); ++k) {
                double dx = x - groups_[k].center.x, dy = y - groups_[k].center.y;
                double d2 = dx * dx + dy * dy;
                if (d2 < dmin2) { dmin2 = d2; near = static_cast<int>(k); }
            }

            double u0 = 0.0, g = 0.0, rho = 0.0, W = 1.0;
            double gx_rest = 0.0, gy_rest = 0.0;  // grad u0 excluding the nearest group
            for (std::size_t k = 0; k < groups_.size(); ++k) {
                double dx = x - groups_[k].center.x, dy = y - groups_[k].center.y;
                double d2 = dx * dx + dy * dy;
                double m = groups_[k].multiplicity;
                double opd2 = 1.0 + d2;
                g += m * 4.0 / (opd2 * opd2);
                rho -= m * std::log(opd2);
                if (static_cast<int>(k) == near && d2 <= node_tol2) {
                    u0 += m * cell_log - m * std::log(opd2);
                    W = 0.0;
                } else {
                    u0 += m * std::log(d2 / opd2);
                    W *= std::pow(d2 / opd2, m);
                }
                if (static_cast<int>(k) != near) {
                    double c = 2.0 * m / (d2 * opd2);
                    gx_rest += c * dx;
                    gy_rest += c * dy;
                }
            }

            double T1 = 0.0, Vx = 0.0, Vy = 0.0;
            if (near >= 0) {
                // Stable grouping: the nearest group's weight w^m absorbs its own
                // singular gradient factor so every piece is finite at d -> 0.
                double dx = x - groups_[near].center.x, dy = y - groups_[near].center.y;
                double d2 = dx * dx + dy * dy;
                double m = groups_[near].multiplicity;
                double opd2 = 1.0 + d2;
                double A = 1.0;  // prod of w^m over the other groups
                for (std::size_t k = 0; k < groups_.size(); ++k) {
                    if (static_cast<int>(k) == near) continue;
                    double ddx = x - groups_[k].center.x, ddy = y - groups_[k].center.y;
                    double dd2 = ddx * ddx + ddy * ddy;
                    A *= std::pow(dd2 / (1.0 + dd2), groups_[k].multiplicity);
                }
                // w^m * m * grad(ln w-part) = 2 m (x-q) d^{2(m-1)} / (1+d^2)^{m+1}
                double dpow = (m > 1.0) ? std::pow(d2, m - 1.0) : 1.0;
                double oppow = std::pow(opd2, m + 1.0);
                double sx = 2.0 * m * dx * dpow / oppow;
                double sy = 2.0 * m * dy * dpow / oppow;
                // w^m * m^2 |grad ln w-part|^2 = 4 m^2 d^{2(m-1)} / (1+d^2)^{m+2}
                double s2 = 4.0 * m * m * dpow / (oppow * opd2);
                double wm = std::pow(d2 / opd2, m);
                Vx = A * (sx + wm * gx_rest);
                Vy = A * (sy + wm * gy_rest);
                T1 = A * (s2 + 2.0 * (sx * gx_rest + sy * gy_rest)
                          + wm * (gx_rest * gx_rest + gy_rest * gy_rest));
            }

            u0_.at(i, j) = u0;
            g_.at(i, j) = g;
            rho_.at(i, j) = rho;
            W_.at(i, j) = W;
            T1_.at(i, j) = T1;
            Vx_.at(i, j) = Vx;
            Vy_.at(i, j) = Vy;
        }
    }
}

double Background::u0_at(double x, double y) const {
    double s = 0.0;
    for (const auto& g : groups_) {
        double dx = x - g.center.x, dy = y - g.center.y;
        double d2 = dx * dx + dy * dy;
        if (d2 == 0.0) return -std::numeric_limits<double>::infinity();
        s += g.multiplicity * std::log(d2 / (1.0 + d2));
    }
    return s;
}

double Background::g_at(double x, double y) const {
    double s = 0.0;
    for (const auto& g : groups_) {
        double dx = x - g.center.x, dy = y - g.center.y;
        double opd2 = 1.0 + dx * dx + dy * dy;
        s += g.multiplicity * 4.0 / (opd2 * opd2);
    }
    return s;
}

double Background::rho_at(double x, double y) const {
    double s = 0.0;
    for (const auto& g : groups_) {
        double dx = x - g.center.x, dy = y - g.center.y;
        s -= g.multiplicity * std::log(1.0 + dx * dx + dy * dy);
    }
    return s;
}

Vec2 Background::grad_u0_at(double x, double y) const {
    Vec2 v;
    for (const auto& g : groups_) {
        double dx = x - g.center.x, dy = y - g.center.y;
        double d2 = dx * dx + dy * dy;
        double c = 2.0 * g.multiplicity / (d2 * (1.0 + d2));
        v.x += c * dx;
        v.y += c * dy;
    }
    return v;
}

double Background::angle_sum_at(double x, double y) const {
    double s = 0.0;
    for (const auto& g : groups_)
        s += g.multiplicity * std::atan2(y - g.center.y, x - g.center.x);
    return s;
}

Vec2 Background::grad_angle_at(double x, double y) const {
    Vec2 v;
    for (const auto& g : groups_) {
        double dx = x - g.center.x, dy = y - g.center.y;
        double d2 = dx * dx + dy * dy;
        if (d2 == 0.0) continue;
        v.x += g.multiplicity * (-dy / d2);
        v.y += g.multiplicity * (dx / d2);
    }
    return v;
}

bool Background::in_vortex_patch(int ix, int iy, int radius) const {
    const double x = grid_.x(ix), y = grid_.y(iy);
    const double r = (radius + 0.5) * grid_.h;
    for (const auto& g : groups_)
        if (std::abs(x - g.center.x) <= r && std::abs(y - g.center.y) <= r) return true;
    return false;
}

Background build_background(const std::vector<Vec2>& points, const Grid2D& grid) {
    return Background(grid, points);
}

}  // namespace vgl
