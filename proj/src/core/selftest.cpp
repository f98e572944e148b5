#include "core/selftest.hpp"

#include <cmath>
#include <cstdio>
#include <functional>
#include <string>

#include "core/background.hpp"
#include "core/constants.hpp"
#include "core/errors.hpp"
#include "core/metric.hpp"
#include "core/observables.hpp"
#include "core/params.hpp"
#include "core/planar.hpp"
#include "core/poisson.hpp"
#include "core/radial.hpp"

namespace vgl {

namespace {

struct Runner {
    bool quiet;
    int failures = 0;

    void check(const std::string& name, const std::function<bool()>& body) {
        bool ok = false;
        std::string err;
        try {
            ok = body();
        } catch (const std::exception& e) {
            err = e.what();
        }
        if (!ok) ++failures;
        if (!quiet || !ok)
            std::printf("%-44s %s%s%s\n", name.c_str(), ok ? "pass" : "FAIL",
                        err.empty() ? "" : "  ", err.c_str());
    }
};

bool near(double a, double b, double tol) { return std::abs(a - b) <= tol; }

}  // namespace

int self_test(bool quiet) {
    Runner r{quiet};

    r.check("validate: boundary admissibility", [] {
        PhysicalParams p;
        p.G = 1.0 / (8.0 * kPi);
        p.points.assign(2, {0, 0});
        auto rep = validate(p);
        return rep.passed() && near(rep.delta, 2.0, 1e-14) && near(rep.deficit_angle, kTwoPi, 1e-12);
    });
    r.check("validate: flat space", [] {
        PhysicalParams p;
        p.points.assign(3, {0, 0});
        auto rep = validate(p);
        return rep.passed() && rep.delta == 0.0 && rep.deficit_angle == 0.0;
    });
    r.check("validate: 4piGN > 1 rejected", [] {
        PhysicalParams p;
        p.G = 1.0 / kTwoPi;
        p.points.assign(1, {0, 0});
        return !validate(p).passed();
    });
    r.check("make_grid: spacing and margin rule", [] {
        auto g = make_grid(20.0, 257, {{0, 0}});
        bool ok = near(g.h, 40.0 / 256.0, 1e-15);
        try {
            make_grid(20.0, 257, {{15.0, 0.0}});
            return false;
        } catch (const ValidationError&) {}
        try {
            make_grid(10.0, 2, {});
            return false;
        } catch (const ValidationError&) {}
        return ok;
    });
    r.check("metric: G=0 gives e^eta == g0", [] {
        PhysicalParams p;
        p.g0 = 0.7;
        p.points = {{0, 0}};
        Grid2D g = make_grid(8.0, 33, p.points);
        Background bg(g, p.points);
        ScalarField2D v(g, 0.3);
        MetricField m = metric_factor_from_v(bg, v, p);
        return max_value(m.values) == 0.7 && min_value(m.values) == 0.7;
    });
    r.check("metric: vacuum value e^{-4piG}", [] {
        PhysicalParams p;
        p.G = 0.01;
        Grid2D g = make_grid(8.0, 33, {});
        Background bg(g, {});
        ScalarField2D v(g, 0.0);
        MetricField m = metric_factor_from_v(bg, v, p);
        return near(max_value(m.values), std::exp(-kFourPi * 0.01), 1e-14)
               && near(min_value(m.values), std::exp(-kFourPi * 0.01), 1e-14);
    });
    r.check("metric: one vortex closed form at r=1", [] {
        PhysicalParams p;
        p.G = 0.013;
        p.points = {{0, 0}};
        Grid2D g = make_grid(8.0, 33, p.points);
        Background bg(g, p.points);
        ScalarField2D u(g);
        for (int j = 0; j < g.n; ++j)
            for (int i = 0; i < g.n; ++i) u.at(i, j) = bg.u0().at(i, j);
        MetricField m = metric_factor(u, p);
        int c = g.center(), k = c + static_cast<int>(std::round(1.0 / g.h));
        double want = std::pow(0.5 * std::exp(-0.5), kFourPi * p.G);
        return near(m.values.at(k, c), want, 1e-10);
    });
    r.check("curvature: constant eta is flat", [] {
        Grid2D g = make_grid(5.0, 41, {});
        ScalarField2D eta(g, 1.234);
        return sup_norm(gauss_curvature(eta)) == 0.0;
    });
    r.check("curvature: round sphere has K = 1", [] {
        Grid2D g = make_grid(2.0, 129, {});
        ScalarField2D eta(g);
        for (int j = 0; j < g.n; ++j)
            for (int i = 0; i < g.n; ++i) {
                double r2 = g.x(i) * g.x(i) + g.y(j) * g.y(j);
                eta.at(i, j) = -2.0 * std::log(1.0 + 0.25 * r2);
            }
        ScalarField2D K = gauss_curvature(eta);
        double worst = 0.0;
        for (int j = 1; j < g.n - 1; ++j)
            for (int i = 1; i < g.n - 1; ++i) worst = std::max(worst, std::abs(K.at(i, j) - 1.0));
        return worst < 5e-4;
    });
    r.check("radial metric: power law values", [] {
        PhysicalParams flat;
        flat.points = {{0, 0}};
        RadialMetric m0(flat, RadialMetricMode::pure_power_law);
        PhysicalParams p;
        p.points = {{0, 0}};
        p.G = 0.5 / (8.0 * kPi);  // delta = 0.5
        RadialMetric m1(p, RadialMetricMode::pure_power_law);
        return near(m0(3.7), 1.0, 1e-15) && near(m1(4.0), 0.5, 1e-15);
    });
    r.check("background: source strength at the core", [] {
        Grid2D g = make_grid(8.0, 33, {{0, 0}});
        Background one(g, {{0, 0}});
        std::vector<Vec2> three(3, {0, 0});
        Background trip(g, three);
        int c = g.center();
        return near(one.g().at(c, c), 4.0, 1e-14) && near(trip.g().at(c, c), 12.0, 1e-14)
               && near(trip.u0().at(c, c + 8),
                       3.0 * std::log((64.0 * g.h * g.h) / (1.0 + 64.0 * g.h * g.h)), 1e-12);
    });
    r.check("supersolution: u = u0 + v+ vanishes", [] {
        Grid2D g = make_grid(8.0, 33, {{0, 0}});
        Background bg(g, {{0, 0}});
        ScalarField2D vp = supersolution(bg);
        double worst = 0.0;
        for (int j = 0; j < g.n; ++j)
            for (int i = 0; i < g.n; ++i) {
                if (i == g.center() && j == g.center()) continue;
                worst = std::max(worst, std::abs(std::exp(bg.u0().at(i, j) + vp.at(i, j)) - 1.0));
            }
        return worst < 1e-14;
    });
    r.check("linear solve: zero source gives zero", [] {
        Grid2D g = make_grid(4.0, 33, {});
        ScalarField2D rhs(g, 0.0);
        return sup_norm(solve_shifted_poisson(rhs, 1.0)) == 0.0;
    });
    r.check("linear solve: exact on product quadratics", [] {
        Grid2D g = make_grid(3.0, 65, {});
        ScalarField2D truth(g), rhs(g), bc(g, 0.0);
        for (int j = 0; j < g.n; ++j)
            for (int i = 0; i < g.n; ++i) {
                double x = g.x(i), y = g.y(j);
                truth.at(i, j) = x * x + x * y - 2.0 * y * y + 3.0 * x;
                rhs.at(i, j) = (2.0 - 4.0) - truth.at(i, j);  // (Lap - 1) truth
                bc.at(i, j) = truth.at(i, j);
            }
        ScalarField2D w = solve_shifted_poisson(rhs, 1.0, &bc);
        double worst = 0.0;
        for (std::size_t k = 0; k < w.data().size(); ++k)
            worst = std::max(worst, std::abs(w.data()[k] - truth.data()[k]));
        return worst < 1e-8;
    });
    r.check("series: lambda=0, v=0 collapses to a r^N", [] {
        PhysicalParams p;
        p.lambda = 0.0;
        p.points.assign(2, {0, 0});
        RadialMetric em(p, RadialMetricMode::pure_power_law);
        auto v0 = RadialInput::analytic([](double) { return 0.0; }, [](double) { return 0.0; });
        auto [u, du] = local_series_u(0.7, 0.01, v0, p, em);
        return near(u, 0.7 * 1e-4, 1e-18) && near(du, 1.4 * 0.01, 1e-15);
    });
    r.check("integrate: lambda=0 crossing at a^{-1/N}", [] {
        PhysicalParams p;
        p.lambda = 0.0;
        p.points.assign(2, {0, 0});
        RadialMetric em(p, RadialMetricMode::pure_power_law);
        auto v0 = RadialInput::analytic([](double) { return 0.0; }, [](double) { return 0.0; });
        auto out = integrate_u(4.0, v0, p, em, 100.0);
        return out.cls == ShootClass::crossed && near(out.exit_r, 0.5, 1e-6);
    });
    r.check("shoot: degenerate bracket reported", [] {
        PhysicalParams p;
        p.lambda = 0.0;
        p.points.assign(2, {0, 0});
        RadialMetric em(p, RadialMetricMode::pure_power_law);
        auto v0 = RadialInput::analytic([](double) { return 0.0; }, [](double) { return 0.0; });
        RadialGrid grid = RadialGrid::graded(1e-3, 100.0, 300);
        try {
            shoot_u(v0, p, em, grid);
            return false;
        } catch (const ValidationError& e) {
            return std::string(e.what()).find("BracketNotFound") != std::string::npos;
        }
    });
    r.check("decay fit: synthetic power laws", [] {
        std::vector<double> rr, f2, f3;
        for (int k = 0; k < 40; ++k) {
            double r = 2.0 * std::pow(10.0, k / 39.0);
            rr.push_back(r);
            f2.push_back(std::pow(r, -2.0));
            f3.push_back(5.0 * std::pow(r, -3.0) * (1.0 + 0.01 * std::sin(r)));
        }
        auto a = decay_fit(rr, f2, true);
        auto b = decay_fit(rr, f3, false);
        return near(a.exponent, 2.0, 0.01) && std::abs(b.exponent - 3.0) <= b.ci + 0.05;
    });
    r.check("planar: vacuum solve is identically zero", [] {
        PhysicalParams p;
        Grid2D g = make_grid(6.0, 65, {});
        Background bg(g, {});
        PlanarSolution sol = monotone_solve(bg, p);
        Background bg2(g, {});
        auto rep = build_report(sol, bg2);
        return sol.converged && sup_norm(sol.v) == 0.0 && near(rep.flux.value, 0.0, 1e-12)
               && near(rep.energy.value, 0.0, 1e-12);
    });
    r.check("planar: unit winding around the core", [] {
        PhysicalParams p;
        p.points = {{0, 0}};
        Grid2D g = make_grid(8.0, 129, p.points);
        Background bg(g, p.points);
        PlanarSolution sol = monotone_solve(bg, p);
        GaugeFields f = reconstruct_fields(sol, bg);
        return sol.converged && near(winding_number(f, g.center() / 2), 1.0, 1e-9);
    });
    r.check("radial properties: constructed counterexample", [] {
        PhysicalParams p;
        p.points.assign(2, {0, 0});
        RadialGrid grid = RadialGrid::graded(1e-3, 10.0, 200);
        RadialProfile u, v;
        u.grid = v.grid = grid;
        u.lead_power = 1.0;
        v.lead_power = 2.0;
        for (double rr : grid.nodes) {
            u.values.push_back(rr / (1.0 + rr));
            u.derivs.push_back(1.0 / ((1.0 + rr) * (1.0 + rr)));
            v.values.push_back(rr * rr / (1.0 + rr * rr));
            v.derivs.push_back(2.0 * rr / ((1.0 + rr * rr) * (1.0 + rr * rr)));
        }
        auto rep = verify_radial_profiles(u, v, p, 2.0, 0.1, 1.0, 0.1);
        for (const auto& c : rep.checks)
            if (c.name == "scaled-ratio-u-rN" && c.status == PropertyCheck::Status::fail)
                return true;
        return false;
    });
    r.check("report: deficit angle is 8 pi^2 G N", [] {
        PhysicalParams p;
        p.G = 0.004;
        p.points.assign(2, {0, 0});
        Grid2D g = make_grid(8.0, 65, p.points);
        Background bg(g, p.points);
        PlanarSolution sol = monotone_solve(bg, p);
        auto rep = build_report(sol, bg);
        return near(rep.deficit_angle.value, 8.0 * kPi * kPi * 0.004 * 2.0, 1e-13);
    });

    return r.failures;
}

}  // namespace vgl
