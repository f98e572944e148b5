#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "core/background.hpp"
#include "core/config.hpp"
#include "core/errors.hpp"
#include "core/io.hpp"
#include "core/observables.hpp"
#include "core/planar.hpp"
#include "core/runner.hpp"
#include "vgl/vgl.h"

using namespace vgl;
namespace fs = std::filesystem;

namespace {

const char* kSmallPlanar = R"({
  "lambda": 1.0, "G": 0.0, "g0": 1.0,
  "points": [[0.0, 0.0]],
  "grid": {"R": 8.0, "n": 97},
  "solver": {"tol": 1e-8}
})";

const char* kSmallRadial = R"({
  "lambda": 1.0, "G": 0.0, "g0": 1.0,
  "N": 2,
  "radial": {"r_min": 1e-3, "r_max": 1e3, "nodes": 500}
})";

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

fs::path temp_dir(const char* tag) {
    fs::path dir = fs::temp_directory_path() / (std::string("vgl-test-") + tag);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

}  // namespace

TEST_CASE("config: parse, defaults, and validation errors") {
    auto j = nlohmann::json::parse(kSmallPlanar);
    SolverConfig c = parse_config(j);
    CHECK(c.params.lambda == 1.0);
    CHECK(c.params.N() == 1);
    CHECK(c.has_grid);
    CHECK_FALSE(c.has_radial);
    CHECK(c.tol == 1e-8);
    CHECK(c.max_iter == 50);
    CHECK(c.metric_mode == "power-law");

    auto r = nlohmann::json::parse(kSmallRadial);
    SolverConfig cr = parse_config(r);
    CHECK(cr.params.N() == 2);
    CHECK(cr.params.points[0].x == 0.0);
    CHECK(cr.radial_nodes == 500);
    CHECK(cr.radial_options().tol == 1e-7);  // radial default when tol unset

    nlohmann::json bad = j;
    bad.erase("lambda");
    CHECK_THROWS_AS(parse_config(bad), ValidationError);
    bad = j;
    bad["typo"] = 1;
    CHECK_THROWS_AS(parse_config(bad), ValidationError);
    bad = j;
    bad["N"] = 2;  // disagrees with points
    CHECK_THROWS_AS(parse_config(bad), ValidationError);
    bad = j;
    bad.erase("grid");
    CHECK_THROWS_AS(parse_config(bad), ValidationError);
}

TEST_CASE("config overrides: dotted paths, last one wins, unknown keys rejected") {
    auto j = nlohmann::json::parse(kSmallPlanar);
    apply_override(j, "solver.tol=1e-9");
    apply_override(j, "G=0.002");
    apply_override(j, "G=0.003");
    apply_override(j, "solver.metric=self-consistent");
    SolverConfig c = parse_config(j);
    CHECK(c.tol == 1e-9);
    CHECK(c.params.G == 0.003);
    CHECK(c.metric_mode == "self-consistent");
    CHECK_THROWS_AS(apply_override(j, "solver.bogus=1"), ValidationError);
    CHECK_THROWS_AS(apply_override(j, "nonsense=1"), ValidationError);
    CHECK_THROWS_AS(apply_override(j, "no-equals-sign"), ValidationError);
}

TEST_CASE("fields CSV: exact header, full row count, 17-digit values") {
    PhysicalParams p;
    p.points = {{0.0, 0.0}};
    Grid2D g = make_grid(8.0, 65, p.points);
    Background bg(g, p.points);
    PlanarSolution sol = monotone_solve(bg, p);
    ScalarField2D f12(g, 0.25);
    fs::path dir = temp_dir("csv");
    write_fields_csv((dir / "fields.csv").string(), sol, f12);
    std::string text = slurp((dir / "fields.csv").string());
    CHECK(text.rfind("x,y,u,v,eta,F12\n", 0) == 0);
    std::size_t rows = std::count(text.begin(), text.end(), '\n');
    CHECK(rows == 65u * 65u + 1u);
    CHECK(text.find("0.25") != std::string::npos);
    // 17 significant digits round-trip
    CHECK(format_17g(1.0 / 3.0) == "0.33333333333333331");
}

TEST_CASE("binary dump round-trips bit-exactly") {
    Grid2D g = make_grid(4.0, 17, {});
    ScalarField2D a(g), b(g);
    for (std::size_t k = 0; k < a.data().size(); ++k) {
        a.data()[k] = std::sin(0.1 * k) * 1e-7;
        b.data()[k] = k;
    }
    fs::path dir = temp_dir("bin");
    std::string path = (dir / "fields.bin").string();
    write_fields_binary(path, g, {{"alpha", &a}, {"beta", &b}});
    BinaryFields bf = read_fields_binary(path);
    CHECK(bf.n == 17);
    CHECK(bf.R == 4.0);
    REQUIRE(bf.fields.size() == 2);
    CHECK(bf.fields[0].first == "alpha");
    CHECK(bf.fields[1].first == "beta");
    CHECK(bf.fields[0].second == a.data());
    CHECK(bf.fields[1].second == b.data());
    // magic guard
    std::ofstream(path, std::ios::binary) << "NOTMAGIC";
    CHECK_THROWS_AS(read_fields_binary(path), IoError);
}

TEST_CASE("report JSON carries the contracted keys") {
    PhysicalParams p;
    p.points = {{0.0, 0.0}};
    Grid2D g = make_grid(8.0, 65, p.points);
    Background bg(g, p.points);
    PlanarSolution sol = monotone_solve(bg, p);
    auto rep = build_report(sol, bg);
    nlohmann::json j = report_to_json(rep);
    for (const char* key : {"flux", "energy", "total_curvature", "deficit_angle",
                            "current_flux", "decay", "errors", "converged", "notes"})
        CHECK(j.contains(key));
    CHECK(j["decay"].contains("b_u"));
    CHECK(j["decay"].contains("b_F12"));
    CHECK(j["errors"].contains("flux"));
    // CSV line has as many columns as the header
    std::string hdr = report_csv_header(), line = report_csv_line(rep);
    CHECK(std::count(hdr.begin(), hdr.end(), ',') == std::count(line.begin(), line.end(), ','));
}

TEST_CASE("runner: artifacts, exit codes, and determinism") {
    fs::path out = temp_dir("runner");
    auto cfg = nlohmann::json::parse(kSmallPlanar);
    RunOutcome r1 = run_command("solve-planar", cfg, out.string(), true);
    CHECK(r1.exit_code == 0);
    REQUIRE_FALSE(r1.run_dir.empty());
    for (const char* f : {"fields.csv", "report.json", "telemetry.json", "manifest.json"})
        CHECK(fs::exists(fs::path(r1.run_dir) / f));

    nlohmann::json manifest = nlohmann::json::parse(slurp(r1.run_dir + "/manifest.json"));
    CHECK(manifest["command"] == "solve-planar");
    CHECK(manifest["resolved_config"]["lambda"] == 1.0);
    CHECK(manifest.contains("wall_clock_utc"));

    // identical config => byte-identical data artifacts
    RunOutcome r2 = run_command("solve-planar", cfg, out.string(), true);
    CHECK(slurp(r1.run_dir + "/fields.csv") == slurp(r2.run_dir + "/fields.csv"));
    CHECK(slurp(r1.run_dir + "/report.json") == slurp(r2.run_dir + "/report.json"));
    CHECK(slurp(r1.run_dir + "/telemetry.json") == slurp(r2.run_dir + "/telemetry.json"));

    // validation failure: exit 2, admissibility named
    nlohmann::json bad = cfg;
    bad["G"] = 1.0;
    RunOutcome rv = run_command("solve-planar", bad, out.string(), true);
    CHECK(rv.exit_code == 2);
    CHECK(rv.message.find("admissibility") != std::string::npos);

    // non-convergence: exit 3 with artifacts and the failure marker
    nlohmann::json slow = cfg;
    slow["solver"]["max_inner"] = 3;
    slow["solver"]["max_iter"] = 1;
    RunOutcome rn = run_command("solve-planar", slow, out.string(), true);
    CHECK(rn.exit_code == 3);
    nlohmann::json rep = nlohmann::json::parse(slurp(rn.run_dir + "/report.json"));
    CHECK(rep["converged"] == false);

    // planar command requires lambda = 1
    nlohmann::json lam = cfg;
    lam["lambda"] = 2.0;
    CHECK(run_command("solve-planar", lam, out.string(), true).exit_code == 2);

    // unwritable output directory: exit 4
    RunOutcome rio = run_command("solve-planar", cfg, "/proc/vgl-cannot-write", true);
    CHECK(rio.exit_code == 4);
}

TEST_CASE("runner: radial artifacts and sweep aggregation") {
    fs::path out = temp_dir("radial-run");
    auto cfg = nlohmann::json::parse(kSmallRadial);
    RunOutcome r = run_command("solve-radial", cfg, out.string(), true);
    CHECK(r.exit_code == 0);
    CHECK(fs::exists(fs::path(r.run_dir) / "profile.csv"));
    std::string prof = slurp(r.run_dir + "/profile.csv");
    CHECK(prof.rfind("r,u,du,v,dv,eta\n", 0) == 0);
    nlohmann::json tele = nlohmann::json::parse(slurp(r.run_dir + "/telemetry.json"));
    for (const char* key : {"a_star", "b_star", "outer_iters", "residual_u", "residual_v",
                            "alpha_fit", "beta_fit"})
        CHECK(tele.contains(key));

    // sweep: rows in order, failures recorded, empty list -> header only
    auto pcfg = nlohmann::json::parse(kSmallPlanar);
    RunOutcome sw = run_sweep(pcfg, "G", {"0", "0.002", "1.0"}, out.string(), true);
    CHECK(sw.exit_code == 0);
    std::string csv = slurp(sw.run_dir + "/sweep.csv");
    std::istringstream lines(csv);
    std::string l0, l1, l2, l3;
    std::getline(lines, l0);
    std::getline(lines, l1);
    std::getline(lines, l2);
    std::getline(lines, l3);
    CHECK(l0.rfind("axis,value,", 0) == 0);
    CHECK(l1.rfind("G,0,ok", 0) == 0);
    CHECK(l2.rfind("G,0.002,ok", 0) == 0);
    CHECK(l3.rfind("G,1.0,error", 0) == 0);  // inadmissible row recorded, sweep continued

    RunOutcome swe = run_sweep(pcfg, "g0", {}, out.string(), true);
    std::string empty_csv = slurp(swe.run_dir + "/sweep.csv");
    CHECK(std::count(empty_csv.begin(), empty_csv.end(), '\n') == 1);

    CHECK(run_sweep(pcfg, "R", {"1"}, out.string(), true).exit_code == 2);  // bad axis
}

TEST_CASE("C API: opaque handles, accessors, and error paths") {
    CHECK(std::string(vgl_version()) == "0.1.0");

    vgl_config* cfg = nullptr;
    REQUIRE(vgl_config_from_json(kSmallPlanar, &cfg) == VGL_OK);
    CHECK(vgl_config_set(cfg, "solver.tol=1e-8") == VGL_OK);
    CHECK(vgl_config_set(cfg, "solver.nope=1") == VGL_ERR_VALIDATION);
    CHECK(std::string(vgl_last_error()).find("unknown override") != std::string::npos);

    char* vjson = nullptr;
    REQUIRE(vgl_config_validate(cfg, &vjson) == VGL_OK);
    nlohmann::json vr = nlohmann::json::parse(vjson);
    vgl_string_free(vjson);
    CHECK(vr["passed"] == true);
    CHECK(vr["delta"] == 0.0);

    vgl_planar_solution* sol = nullptr;
    REQUIRE(vgl_solve_planar(cfg, &sol) == VGL_OK);
    int n = 0;
    double R = 0;
    CHECK(vgl_planar_grid(sol, &n, &R) == VGL_OK);
    CHECK(n == 97);
    CHECK(R == 8.0);
    std::vector<double> buf(static_cast<std::size_t>(n) * n);
    CHECK(vgl_planar_field(sol, "u", buf.data(), buf.size()) == VGL_OK);
    CHECK(buf[0] <= 0.0);
    CHECK(vgl_planar_field(sol, "phi_abs", buf.data(), buf.size()) == VGL_OK);
    CHECK(vgl_planar_field(sol, "nope", buf.data(), buf.size()) == VGL_ERR_INVALID_ARGUMENT);
    CHECK(vgl_planar_field(sol, "u", buf.data(), 3) == VGL_ERR_INVALID_ARGUMENT);

    char* rep = nullptr;
    REQUIRE(vgl_planar_report_json(sol, &rep) == VGL_OK);
    nlohmann::json rj = nlohmann::json::parse(rep);
    vgl_string_free(rep);
    CHECK(rj["converged"] == true);
    CHECK(std::abs(rj["flux"].get<double>() - 6.2832) < 0.2);

    char* csv = nullptr;
    REQUIRE(vgl_planar_report_csv(sol, 1, &csv) == VGL_OK);
    CHECK(std::string(csv).rfind("status,", 0) == 0);
    vgl_string_free(csv);
    vgl_planar_free(sol);

    // null-argument guards
    CHECK(vgl_solve_planar(nullptr, &sol) == VGL_ERR_INVALID_ARGUMENT);
    CHECK(vgl_config_load("/no/such/file.json", &cfg) == VGL_ERR_IO);

    // inadmissible parameters surface as a validation status
    vgl_config* bad = nullptr;
    REQUIRE(vgl_config_from_json(kSmallPlanar, &bad) == VGL_OK);
    CHECK(vgl_config_set(bad, "G=1.0") == VGL_OK);
    vgl_planar_solution* nosol = nullptr;
    CHECK(vgl_solve_planar(bad, &nosol) == VGL_ERR_VALIDATION);
    CHECK(nosol == nullptr);
    vgl_config_free(bad);
    vgl_config_free(cfg);
}

TEST_CASE("C API: radial solve and profile accessors") {
    vgl_config* cfg = nullptr;
    REQUIRE(vgl_config_from_json(kSmallRadial, &cfg) == VGL_OK);
    vgl_radial_solution* sol = nullptr;
    REQUIRE(vgl_solve_radial(cfg, &sol) == VGL_OK);
    int count = 0;
    CHECK(vgl_radial_size(sol, &count) == VGL_OK);
    CHECK(count == 500);
    std::vector<double> r(count), u(count), v(count);
    CHECK(vgl_radial_profile(sol, "r", r.data(), r.size()) == VGL_OK);
    CHECK(vgl_radial_profile(sol, "u", u.data(), u.size()) == VGL_OK);
    CHECK(vgl_radial_profile(sol, "v", v.data(), v.size()) == VGL_OK);
    CHECK(r.front() == doctest::Approx(1e-3));
    CHECK(u.back() == doctest::Approx(1.0).epsilon(0.02));
    CHECK(v.back() == doctest::Approx(1.0).epsilon(0.02));

    char* props = nullptr;
    REQUIRE(vgl_radial_properties_json(sol, &props) == VGL_OK);
    nlohmann::json pj = nlohmann::json::parse(props);
    vgl_string_free(props);
    CHECK(pj["ok"] == true);

    char* tele = nullptr;
    REQUIRE(vgl_radial_telemetry_json(sol, &tele) == VGL_OK);
    nlohmann::json tj = nlohmann::json::parse(tele);
    vgl_string_free(tele);
    CHECK(tj["a_star"].get<double>() > 0.0);
    vgl_radial_free(sol);
    vgl_config_free(cfg);
}

TEST_CASE("C API: self-test entry point") { CHECK(vgl_self_test(1) == 0); }
