#include "core/runner.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <sstream>

#include "core/config.hpp"
#include "core/constants.hpp"
#include "core/errors.hpp"
#include "core/io.hpp"
#include "core/observables.hpp"
#include "core/selftest.hpp"

namespace vgl {

namespace fs = std::filesystem;

namespace {

std::string timestamp_utc() {
    auto now = std::chrono::system_clock::now();
    std::time_t t = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y%m%dT%H%M%S", &tm);
    return buf;
}

std::string make_run_dir(const std::string& out_dir, const std::string& command) {
    fs::path base(out_dir);
    std::error_code ec;
    fs::create_directories(base, ec);
    if (ec) throw IoError("cannot create output directory " + out_dir + ": " + ec.message());
    std::string stamp = timestamp_utc();
    for (int k = 0;; ++k) {
        fs::path dir = base / (command + "-" + stamp + (k ? "-" + std::to_string(k) : ""));
        if (!fs::exists(dir)) {
            fs::create_directories(dir, ec);
            if (ec) throw IoError("cannot create run directory: " + ec.message());
            return dir.string();
        }
    }
}

void write_manifest(const std::string& dir, const std::string& command, const SolverConfig& cfg,
                    double seconds, const std::string& status) {
    nlohmann::json m;
    m["command"] = command;
    m["version"] = kVersion;
    m["wall_clock_utc"] = timestamp_utc();
    m["duration_seconds"] = seconds;
    m["status"] = status;
    m["resolved_config"] = config_to_json(cfg);
    write_text_file(dir + "/manifest.json", m.dump(2) + "\n");
}

struct Solved {
    ObservableReport report;
    nlohmann::json telemetry;
    bool converged = true;
};

Solved solve_planar_artifacts(const SolverConfig& cfg, const std::string& dir) {
    Grid2D grid = make_grid(cfg.R, cfg.n, cfg.params.points);
    Background bg(grid, cfg.params.points);
    PlanarSolution sol = monotone_solve(bg, cfg.params, cfg.planar_options());
    GaugeFields fields = reconstruct_fields(sol, bg);

    Solved out;
    out.report = build_report(sol, bg, cfg.upper_sign);
    out.telemetry = planar_telemetry(sol);
    out.converged = sol.converged;

    if (!dir.empty()) {
        ScalarField2D f12(sol.grid);
        ScalarField2D eu(sol.grid);
        for (std::size_t k = 0; k < f12.data().size(); ++k) {
            double e = bg.W().data()[k] * std::exp(sol.v.data()[k]);
            f12.data()[k] = 0.5 * sol.metric.values.data()[k] * (1.0 - e)
                            * (cfg.upper_sign ? 1.0 : -1.0);
            eu.data()[k] = e;
        }
        write_fields_csv(dir + "/fields.csv", sol, f12);
        if (cfg.write_binary)
            write_fields_binary(dir + "/fields.bin", grid,
                                {{"u", &sol.u}, {"v", &sol.v}, {"eta", &sol.eta}, {"F12", &f12}});
    }
    return out;
}

Solved solve_radial_artifacts(const SolverConfig& cfg, const std::string& dir) {
    RadialSolution sol = fixed_point_solve(cfg.params, cfg.radial_options());
    Solved out;
    out.report = build_report(sol);
    out.telemetry = radial_telemetry(sol);
    out.converged = sol.converged;
    if (!dir.empty()) write_profile_csv(dir + "/profile.csv", sol);
    return out;
}

}  // namespace

RunOutcome run_command(const std::string& command, const nlohmann::json& raw_config,
                       const std::string& out_dir, bool quiet) {
    RunOutcome outcome;
    if (command == "self-test") {
        int failures = self_test(quiet);
        outcome.exit_code = failures == 0 ? 0 : 1;
        outcome.message = failures == 0 ? "self-test: all checks passed"
                                        : "self-test: " + std::to_string(failures) + " failures";
        return outcome;
    }

    SolverConfig cfg;
    try {
        cfg = parse_config(raw_config);
        ValidationReport vr = validate(cfg.params);
        if (!vr.passed()) throw ValidationError(vr.first_failure());
        if (command == "solve-planar" && !cfg.has_grid)
            throw ValidationError("solve-planar needs a 'grid' section");
        if (command == "solve-planar" && cfg.params.lambda != 1.0)
            throw ValidationError("the planar solver requires lambda = 1 (self-dual regime)");
        if (command == "solve-radial" && !cfg.has_radial)
            throw ValidationError("solve-radial needs a 'radial' section");
    } catch (const Error& e) {
        outcome.exit_code = 2;
        outcome.message = e.what();
        return outcome;
    }

    auto t0 = std::chrono::steady_clock::now();
    try {
        outcome.run_dir = make_run_dir(out_dir, command);
        Solved s;
        if (command == "solve-planar") {
            s = solve_planar_artifacts(cfg, outcome.run_dir);
        } else if (command == "solve-radial") {
            s = solve_radial_artifacts(cfg, outcome.run_dir);
        } else if (command == "observables") {
            s = cfg.has_grid ? solve_planar_artifacts(cfg, "")
                             : solve_radial_artifacts(cfg, "");
        } else {
            outcome.exit_code = 2;
            outcome.message = "unknown command: " + command;
            return outcome;
        }
        write_text_file(outcome.run_dir + "/report.json",
                        report_to_json(s.report).dump(2) + "\n");
        write_text_file(outcome.run_dir + "/telemetry.json", s.telemetry.dump(2) + "\n");
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        write_manifest(outcome.run_dir, command, cfg, secs,
                       s.converged ? "ok" : "no-convergence");
        if (!s.converged) {
            outcome.exit_code = 3;
            outcome.message = "solver did not converge (artifacts written to " + outcome.run_dir
                              + ")";
        } else if (!quiet) {
            outcome.message = "artifacts written to " + outcome.run_dir;
        }
    } catch (const IoError& e) {
        outcome.exit_code = 4;
        outcome.message = e.what();
    } catch (const NoConvergenceError& e) {
        outcome.exit_code = 3;
        outcome.message = e.what();
    } catch (const Error& e) {
        outcome.exit_code = e.code() == ErrorCode::validation ? 2 : 3;
        outcome.message = e.what();
    }
    return outcome;
}

RunOutcome run_sweep(const nlohmann::json& raw_config, const std::string& axis,
                     const std::vector<std::string>& values, const std::string& out_dir,
                     bool quiet) {
    RunOutcome outcome;
    if (axis != "G" && axis != "lambda" && axis != "N" && axis != "g0") {
        outcome.exit_code = 2;
        outcome.message = "sweep axis must be one of G, lambda, N, g0 (got '" + axis + "')";
        return outcome;
    }
    try {
        outcome.run_dir = make_run_dir(out_dir, "sweep");
        std::ostringstream csv;
        csv << "axis,value," << report_csv_header() << "\n";
        for (const auto& val : values) {
            nlohmann::json cfg_json = raw_config;
            try {
                if (axis == "N") {
                    int N = std::stoi(val);
                    cfg_json.erase("points");
                    cfg_json["N"] = N;  // coincident vortices at the origin
                } else {
                    cfg_json[axis] = std::stod(val);
                }
                SolverConfig cfg = parse_config(cfg_json);
                ValidationReport vr = validate(cfg.params);
                if (!vr.passed()) throw ValidationError(vr.first_failure());
                Solved s = cfg.has_grid ? solve_planar_artifacts(cfg, "")
                                        : solve_radial_artifacts(cfg, "");
                csv << axis << ',' << val << ',' << report_csv_line(s.report) << "\n";
            } catch (const std::exception& e) {
                std::string msg = e.what();
                for (auto& ch : msg)
                    if (ch == ',' || ch == '\n') ch = ';';
                csv << axis << ',' << val << ",error: " << msg << "\n";
            }
            if (!quiet) std::fprintf(stderr, "sweep %s=%s done\n", axis.c_str(), val.c_str());
        }
        write_text_file(outcome.run_dir + "/sweep.csv", csv.str());
        nlohmann::json m;
        m["command"] = "sweep";
        m["axis"] = axis;
        m["values"] = values;
        m["version"] = kVersion;
        m["wall_clock_utc"] = timestamp_utc();
        write_text_file(outcome.run_dir + "/manifest.json", m.dump(2) + "\n");
        outcome.message = "sweep written to " + outcome.run_dir;
    } catch (const IoError& e) {
        outcome.exit_code = 4;
        outcome.message = e.what();
    }
    return outcome;
}

}  // namespace vgl
