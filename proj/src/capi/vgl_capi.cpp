#include "vgl/vgl.h"

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <sstream>
#include <string>

#include <json.hpp>

#include "core/background.hpp"
#include "core/config.hpp"
#include "core/constants.hpp"
#include "core/errors.hpp"
#include "core/io.hpp"
#include "core/observables.hpp"
#include "core/planar.hpp"
#include "core/radial.hpp"
#include "core/runner.hpp"
#include "core/selftest.hpp"

namespace {

thread_local std::string g_last_error;

char* dup_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (out) std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

vgl_status to_status(const vgl::Error& e) {
    switch (e.code()) {
        case vgl::ErrorCode::invalid_argument: return VGL_ERR_INVALID_ARGUMENT;
        case vgl::ErrorCode::validation: return VGL_ERR_VALIDATION;
        case vgl::ErrorCode::no_convergence: return VGL_ERR_NO_CONVERGENCE;
        case vgl::ErrorCode::io: return VGL_ERR_IO;
        case vgl::ErrorCode::numeric: return VGL_ERR_NUMERIC;
    }
    return VGL_ERR_NUMERIC;
}

template <typename F>
vgl_status guarded(F&& body) {
    try {
        return body();
    } catch (const vgl::Error& e) {
        g_last_error = e.what();
        return to_status(e);
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return VGL_ERR_NUMERIC;
    }
}

}  // namespace

struct vgl_config {
    nlohmann::json raw;
};

struct vgl_planar_solution {
    vgl::PlanarSolution sol;
    vgl::Background bg;
    vgl::ObservableReport report;
    vgl::ScalarField2D f12;
    vgl::ScalarField2D phi_abs;
};

struct vgl_radial_solution {
    vgl::RadialSolution sol;
    vgl::ObservableReport report;
};

extern "C" {

const char* vgl_version(void) { return vgl::kVersion; }

const char* vgl_last_error(void) { return g_last_error.c_str(); }

void vgl_string_free(char* s) { std::free(s); }

vgl_status vgl_config_load(const char* path, vgl_config** out) {
    if (!path || !out) return VGL_ERR_INVALID_ARGUMENT;
    return guarded([&] {
        auto* cfg = new vgl_config{vgl::load_json_file(path)};
        *out = cfg;
        return VGL_OK;
    });
}

vgl_status vgl_config_from_json(const char* json_text, vgl_config** out) {
    if (!json_text || !out) return VGL_ERR_INVALID_ARGUMENT;
    return guarded([&] {
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(json_text);
        } catch (const std::exception& e) {
            throw vgl::ValidationError(std::string("config is not valid JSON: ") + e.what());
        }
        *out = new vgl_config{std::move(j)};
        return VGL_OK;
    });
}

vgl_status vgl_config_set(vgl_config* cfg, const char* key_eq_value) {
    if (!cfg || !key_eq_value) return VGL_ERR_INVALID_ARGUMENT;
    return guarded([&] {
        vgl::apply_override(cfg->raw, key_eq_value);
        return VGL_OK;
    });
}

vgl_status vgl_config_validate(const vgl_config* cfg, char** report_json) {
    if (!cfg || !report_json) return VGL_ERR_INVALID_ARGUMENT;
    return guarded([&] {
        vgl::SolverConfig sc = vgl::parse_config(cfg->raw);
        vgl::ValidationReport vr = vgl::validate(sc.params);
        nlohmann::json j;
        j["passed"] = vr.passed();
        j["delta"] = vr.delta;
        j["deficit_angle"] = vr.deficit_angle;
        auto arr = nlohmann::json::array();
        for (const auto& c : vr.checks)
            arr.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
        j["checks"] = arr;
        *report_json = dup_string(j.dump(2));
        return VGL_OK;
    });
}

void vgl_config_free(vgl_config* cfg) { delete cfg; }

vgl_status vgl_solve_planar(const vgl_config* cfg, vgl_planar_solution** out) {
    if (!cfg || !out) return VGL_ERR_INVALID_ARGUMENT;
    return guarded([&]() -> vgl_status {
        vgl::SolverConfig sc = vgl::parse_config(cfg->raw);
        if (!sc.has_grid) throw vgl::ValidationError("config has no 'grid' section");
        vgl::Grid2D grid = vgl::make_grid(sc.R, sc.n, sc.params.points);
        vgl::Background bg(grid, sc.params.points);
        vgl::PlanarSolution sol = vgl::monotone_solve(bg, sc.params, sc.planar_options());
        auto* h = new vgl_planar_solution{std::move(sol), std::move(bg), {}, {}, {}};
        h->report = vgl::build_report(h->sol, h->bg, sc.upper_sign);
        h->f12 = vgl::ScalarField2D(h->sol.grid);
        h->phi_abs = vgl::ScalarField2D(h->sol.grid);
        for (std::size_t k = 0; k < h->f12.data().size(); ++k) {
            double e = h->bg.W().data()[k] * std::exp(h->sol.v.data()[k]);
            h->f12.data()[k] = 0.5 * h->sol.metric.values.data()[k] * (1.0 - e)
                               * (sc.upper_sign ? 1.0 : -1.0);
            h->phi_abs.data()[k] = std::sqrt(e);
        }
        *out = h;
        if (!h->sol.converged) {
            g_last_error = "planar solver did not converge: " + h->sol.diagnostics;
            return VGL_ERR_NO_CONVERGENCE;
        }
        return VGL_OK;
    });
}

vgl_status vgl_solve_radial(const vgl_config* cfg, vgl_radial_solution** out) {
    if (!cfg || !out) return VGL_ERR_INVALID_ARGUMENT;
    return guarded([&]() -> vgl_status {
        vgl::SolverConfig sc = vgl::parse_config(cfg->raw);
        if (!sc.has_radial) throw vgl::ValidationError("config has no 'radial' section");
        vgl::RadialSolution sol = vgl::fixed_point_solve(sc.params, sc.radial_options());
        auto* h = new vgl_radial_solution{std::move(sol), {}};
        h->report = vgl::build_report(h->sol);
        *out = h;
        if (!h->sol.converged) {
            g_last_error = "radial solver did not converge: " + h->sol.diagnostics;
            return VGL_ERR_NO_CONVERGENCE;
        }
        return VGL_OK;
    });
}

void vgl_planar_free(vgl_planar_solution* s) { delete s; }
void vgl_radial_free(vgl_radial_solution* s) { delete s; }

vgl_status vgl_planar_grid(const vgl_planar_solution* s, int* n, double* R) {
    if (!s) return VGL_ERR_INVALID_ARGUMENT;
    if (n) *n = s->sol.grid.n;
    if (R) *R = s->sol.grid.R;
    return VGL_OK;
}

vgl_status vgl_planar_field(const vgl_planar_solution* s, const char* name, double* buf,
                            size_t len) {
    if (!s || !name || !buf) return VGL_ERR_INVALID_ARGUMENT;
    const vgl::ScalarField2D* f = nullptr;
    std::string nm = name;
    if (nm == "u") f = &s->sol.u;
    else if (nm == "v") f = &s->sol.v;
    else if (nm == "eta") f = &s->sol.eta;
    else if (nm == "F12") f = &s->f12;
    else if (nm == "phi_abs") f = &s->phi_abs;
    else {
        g_last_error = "unknown field: " + nm;
        return VGL_ERR_INVALID_ARGUMENT;
    }
    if (len < f->data().size()) {
        g_last_error = "buffer too small";
        return VGL_ERR_INVALID_ARGUMENT;
    }
    std::memcpy(buf, f->data().data(), f->data().size() * sizeof(double));
    return VGL_OK;
}

vgl_status vgl_planar_report_json(const vgl_planar_solution* s, char** json) {
    if (!s || !json) return VGL_ERR_INVALID_ARGUMENT;
    return guarded([&] {
        *json = dup_string(vgl::report_to_json(s->report).dump(2));
        return VGL_OK;
    });
}

vgl_status vgl_planar_report_csv(const vgl_planar_solution* s, int with_header, char** csv) {
    if (!s || !csv) return VGL_ERR_INVALID_ARGUMENT;
    std::string out;
    if (with_header) out = vgl::report_csv_header() + "\n";
    out += vgl::report_csv_line(s->report) + "\n";
    *csv = dup_string(out);
    return VGL_OK;
}

vgl_status vgl_planar_telemetry_json(const vgl_planar_solution* s, char** json) {
    if (!s || !json) return VGL_ERR_INVALID_ARGUMENT;
    *json = dup_string(vgl::planar_telemetry(s->sol).dump(2));
    return VGL_OK;
}

vgl_status vgl_planar_write_fields_csv(const vgl_planar_solution* s, const char* path) {
    if (!s || !path) return VGL_ERR_INVALID_ARGUMENT;
    return guarded([&] {
        vgl::write_fields_csv(path, s->sol, s->f12);
        return VGL_OK;
    });
}

vgl_status vgl_planar_write_fields_bin(const vgl_planar_solution* s, const char* path) {
    if (!s || !path) return VGL_ERR_INVALID_ARGUMENT;
    return guarded([&] {
        vgl::write_fields_binary(path, s->sol.grid,
                                 {{"u", &s->sol.u},
                                  {"v", &s->sol.v},
                                  {"eta", &s->sol.eta},
                                  {"F12", &s->f12}});
        return VGL_OK;
    });
}

vgl_status vgl_radial_size(const vgl_radial_solution* s, int* count) {
    if (!s || !count) return VGL_ERR_INVALID_ARGUMENT;
    *count = s->sol.grid.size();
    return VGL_OK;
}

vgl_status vgl_radial_profile(const vgl_radial_solution* s, const char* name, double* buf,
                              size_t len) {
    if (!s || !name || !buf) return VGL_ERR_INVALID_ARGUMENT;
    const std::size_t n = static_cast<std::size_t>(s->sol.grid.size());
    if (len < n) {
        g_last_error = "buffer too small";
        return VGL_ERR_INVALID_ARGUMENT;
    }
    std::string nm = name;
    for (std::size_t i = 0; i < n; ++i) {
        double r = s->sol.grid.nodes[i];
        double val;
        if (nm == "r") val = r;
        else if (nm == "u") val = s->sol.u.values[i];
        else if (nm == "du") val = s->sol.u.derivs[i];
        else if (nm == "v") val = s->sol.v.values[i];
        else if (nm == "dv") val = s->sol.v.derivs[i];
        else if (nm == "eta") val = std::log(s->sol.metric_at(r));
        else {
            g_last_error = "unknown profile column: " + nm;
            return VGL_ERR_INVALID_ARGUMENT;
        }
        buf[i] = val;
    }
    return VGL_OK;
}

vgl_status vgl_radial_report_json(const vgl_radial_solution* s, char** json) {
    if (!s || !json) return VGL_ERR_INVALID_ARGUMENT;
    *json = dup_string(vgl::report_to_json(s->report).dump(2));
    return VGL_OK;
}

vgl_status vgl_radial_report_csv(const vgl_radial_solution* s, int with_header, char** csv) {
    if (!s || !csv) return VGL_ERR_INVALID_ARGUMENT;
    std::string out;
    if (with_header) out = vgl::report_csv_header() + "\n";
    out += vgl::report_csv_line(s->report) + "\n";
    *csv = dup_string(out);
    return VGL_OK;
}

vgl_status vgl_radial_telemetry_json(const vgl_radial_solution* s, char** json) {
    if (!s || !json) return VGL_ERR_INVALID_ARGUMENT;
    *json = dup_string(vgl::radial_telemetry(s->sol).dump(2));
    return VGL_OK;
}

vgl_status vgl_radial_write_profile_csv(const vgl_radial_solution* s, const char* path) {
    if (!s || !path) return VGL_ERR_INVALID_ARGUMENT;
    return guarded([&] {
        vgl::write_profile_csv(path, s->sol);
        return VGL_OK;
    });
}

vgl_status vgl_radial_properties_json(const vgl_radial_solution* s, char** json) {
    if (!s || !json) return VGL_ERR_INVALID_ARGUMENT;
    return guarded([&] {
        vgl::PropertyReport rep = vgl::verify_radial_properties(s->sol);
        nlohmann::json j;
        j["ok"] = rep.ok();
        auto arr = nlohmann::json::array();
        for (const auto& c : rep.checks) {
            const char* st = "pass";
            if (c.status == vgl::PropertyCheck::Status::fail) st = "fail";
            else if (c.status == vgl::PropertyCheck::Status::outside_hypothesis)
                st = "outside-hypothesis";
            else if (c.status == vgl::PropertyCheck::Status::inconclusive) st = "inconclusive";
            arr.push_back({{"name", c.name}, {"status", st}, {"detail", c.detail}});
        }
        j["checks"] = arr;
        *json = dup_string(j.dump(2));
        return VGL_OK;
    });
}

int vgl_run(const char* command, const vgl_config* cfg, const char* out_dir, int quiet,
            char** run_dir, char** message) {
    if (!command) return 2;
    nlohmann::json raw = cfg ? cfg->raw : nlohmann::json::object();
    vgl::RunOutcome out;
    try {
        out = vgl::run_command(command, raw, out_dir ? out_dir : "runs", quiet != 0);
    } catch (const std::exception& e) {
        g_last_error = e.what();
        if (message) *message = dup_string(e.what());
        return 4;
    }
    if (run_dir) *run_dir = dup_string(out.run_dir);
    if (message) *message = dup_string(out.message);
    if (out.exit_code != 0) g_last_error = out.message;
    return out.exit_code;
}

int vgl_run_sweep(const vgl_config* cfg, const char* axis, const char* values,
                  const char* out_dir, int quiet, char** run_dir, char** message) {
    if (!cfg || !axis) return 2;
    std::vector<std::string> vals;
    if (values && *values) {
        std::stringstream ss(values);
        std::string item;
        while (std::getline(ss, item, ',')) vals.push_back(item);
    }
    vgl::RunOutcome out;
    try {
        out = vgl::run_sweep(cfg->raw, axis, vals, out_dir ? out_dir : "runs", quiet != 0);
    } catch (const std::exception& e) {
        g_last_error = e.what();
        if (message) *message = dup_string(e.what());
        return 4;
    }
    if (run_dir) *run_dir = dup_string(out.run_dir);
    if (message) *message = dup_string(out.message);
    if (out.exit_code != 0) g_last_error = out.message;
    return out.exit_code;
}

int vgl_self_test(int quiet) { return vgl::self_test(quiet != 0); }

}  // extern "C"
