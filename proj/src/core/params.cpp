#include "core/params.hpp"

#include <cmath>
#include <sstream>

#include "core/errors.hpp"

namespace vgl {

namespace {
std::string fmt(double v) {
    std::ostringstream os;
    os.precision(12);
    os << v;
    return os.str();
}
}  // namespace

ValidationReport validate(const PhysicalParams& p) {
    ValidationReport r;
    r.delta = p.delta();
    r.deficit_angle = p.deficit_angle();

    auto add = [&](const std::string& name, bool ok, const std::string& detail) {
        r.checks.push_back({name, ok, detail});
    };

    bool finite = std::isfinite(p.lambda) && std::isfinite(p.G) && std::isfinite(p.g0);
    for (const auto& q : p.points) finite = finite && std::isfinite(q.x) && std::isfinite(q.y);
    add("finite-inputs", finite, finite ? "" : "non-finite parameter");

    add("lambda-positive", p.lambda > 0.0, "lambda = " + fmt(p.lambda));
    add("g0-positive", p.g0 > 0.0, "g0 = " + fmt(p.g0));
    add("G-nonnegative", p.G >= 0.0, "G = " + fmt(p.G));

    double admiss = kFourPi * p.G * p.N();
    add("admissibility-4piGN", admiss <= 1.0 + 1e-15,
        "4*pi*G*N = " + fmt(admiss) + " (must be <= 1)");

    return r;
}

Grid2D make_grid(double R, int n, const std::vector<Vec2>& points) {
    if (!(R > 0.0)) throw ValidationError("grid half-extent R must be positive");
    if (n < 3) throw ValidationError("grid needs n >= 3 nodes per axis");
    if (n % 2 == 0) throw ValidationError("grid needs odd n so the origin is a node");
    Grid2D g;
    g.R = R;
    g.n = n;
    g.h = 2.0 * R / (n - 1);
    for (const auto& p : points) {
        if (!(std::abs(p.x) < R / 2.0 && std::abs(p.y) < R / 2.0)) {
            std::ostringstream os;
            os << "VortexTooCloseToBoundary: point (" << p.x << ", " << p.y
               << ") outside the margin box [-R/2, R/2]^2 with R = " << R;
            throw ValidationError(os.str());
        }
    }
    return g;
}

bool on_grid_node(const Grid2D& g, const Vec2& p) {
    double ix = (p.x + g.R) / g.h;
    double iy = (p.y + g.R) / g.h;
    return std::abs(ix - std::round(ix)) < 1e-9 && std::abs(iy - std::round(iy)) < 1e-9;
}

RadialGrid RadialGrid::graded(double r_min, double r_max, int count) {
    if (!(r_min > 0.0) || !(r_max > r_min))
        throw ValidationError("radial grid needs 0 < r_min < r_max");
    if (count < 8) throw ValidationError("radial grid needs at least 8 nodes");
    RadialGrid rg;
    rg.r_min = r_min;
    rg.r_max = r_max;
    rg.nodes.resize(count);
    double ratio = std::pow(r_max / r_min, 1.0 / (count - 1));
    double r = r_min;
    for (int i = 0; i < count; ++i) {
        rg.nodes[i] = r;
        r *= ratio;
    }
    rg.nodes.back() = r_max;
    return rg;
}

}  // namespace vgl
