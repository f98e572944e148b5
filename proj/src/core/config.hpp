#pragma once

#include <string>

#include <json.hpp>

#include "core/params.hpp"
#include "core/planar.hpp"
#include "core/radial.hpp"

namespace vgl {

// Resolved run configuration (file + overrides).
struct SolverConfig {
    PhysicalParams params;

    bool has_grid = false;
    double R = 20.0;
    int n = 513;

    bool has_radial = false;
    double r_min = 1e-3;
    double r_max = 1e3;
    int radial_nodes = 700;

    double tol = 1e-8;      // planar default; radial default is 1e-7 when unset
    bool tol_set = false;
    int max_iter = 50;
    int max_inner = 500;
    double omega = 1.0;
    double bisect_tol = 1e-12;
    double tail_tol = 0.02;
    std::string metric_mode = "power-law";  // or "self-consistent"
    bool upper_sign = true;
    bool write_binary = false;

    RadialOptions radial_options() const;
    PlanarOptions planar_options() const;
};

nlohmann::json load_json_file(const std::string& path);
SolverConfig parse_config(const nlohmann::json& j);

// Applies a dotted-path override (e.g. "solver.tol=1e-9"); the key must be a
// known configuration key.  The value is parsed as JSON when possible.
void apply_override(nlohmann::json& j, const std::string& key_eq_value);

// Full resolved config (defaults filled in) for the manifest.
nlohmann::json config_to_json(const SolverConfig& c);

}  // namespace vgl
