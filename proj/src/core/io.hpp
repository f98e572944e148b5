#pragma once

#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "core/observables.hpp"
#include "core/planar.hpp"
#include "core/radial.hpp"

namespace vgl {

// Planar field table: header `x,y,u,v,eta,F12`, row-major, 17 significant digits.
void write_fields_csv(const std::string& path, const PlanarSolution& sol,
                      const ScalarField2D& f12);

// Binary dump: magic "VLXF0001", u32 n, f64 R, u32 field count, per field a
// u32 name length + bytes; then per field n*n row-major little-endian f64.
void write_fields_binary(const std::string& path, const Grid2D& grid,
                         const std::vector<std::pair<std::string, const ScalarField2D*>>& fields);
struct BinaryFields {
    int n = 0;
    double R = 0.0;
    std::vector<std::pair<std::string, std::vector<double>>> fields;
};
BinaryFields read_fields_binary(const std::string& path);

// Radial profile table: header `r,u,du,v,dv,eta`.
void write_profile_csv(const std::string& path, const RadialSolution& sol);

nlohmann::json report_to_json(const ObservableReport& rep);
std::string report_csv_header();
std::string report_csv_line(const ObservableReport& rep);

nlohmann::json planar_telemetry(const PlanarSolution& sol);
nlohmann::json radial_telemetry(const RadialSolution& sol);

void write_text_file(const std::string& path, const std::string& content);
std::string format_17g(double v);

}  // namespace vgl
