#include "core/io.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

#include "core/errors.hpp"

namespace vgl {

std::string format_17g(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open for writing: " + path);
    out << content;
    if (!out) throw IoError("write failed: " + path);
}

void write_fields_csv(const std::string& path, const PlanarSolution& sol,
                      const ScalarField2D& f12) {
    std::ostringstream os;
    os << "x,y,u,v,eta,F12\n";
    const Grid2D& g = sol.grid;
    for (int j = 0; j < g.n; ++j)
        for (int i = 0; i < g.n; ++i)
            os << format_17g(g.x(i)) << ',' << format_17g(g.y(j)) << ','
               << format_17g(sol.u.at(i, j)) << ',' << format_17g(sol.v.at(i, j)) << ','
               << format_17g(sol.eta.at(i, j)) << ',' << format_17g(f12.at(i, j)) << '\n';
    write_text_file(path, os.str());
}

void write_fields_binary(const std::string& path, const Grid2D& grid,
                         const std::vector<std::pair<std::string, const ScalarField2D*>>& fields) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open for writing: " + path);
    out.write("VLXF0001", 8);
    auto put_u32 = [&](std::uint32_t v) { out.write(reinterpret_cast<const char*>(&v), 4); };
    auto put_f64 = [&](double v) { out.write(reinterpret_cast<const char*>(&v), 8); };
    put_u32(static_cast<std::uint32_t>(grid.n));
    put_f64(grid.R);
    put_u32(static_cast<std::uint32_t>(fields.size()));
    for (const auto& [name, f] : fields) {
        put_u32(static_cast<std::uint32_t>(name.size()));
        out.write(name.data(), static_cast<std::streamsize>(name.size()));
    }
    for (const auto& [name, f] : fields)
        out.write(reinterpret_cast<const char*>(f->data().data()),
                  static_cast<std::streamsize>(f->data().size() * sizeof(double)));
    if (!out) throw IoError("write failed: " + path);
}

BinaryFields read_fields_binary(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open: " + path);
    char magic[8];
    in.read(magic, 8);
    if (std::memcmp(magic, "VLXF0001", 8) != 0) throw IoError("bad magic in " + path);
    auto get_u32 = [&]() {
        std::uint32_t v;
        in.read(reinterpret_cast<char*>(&v), 4);
        return v;
    };
    BinaryFields bf;
    bf.n = static_cast<int>(get_u32());
    in.read(reinterpret_cast<char*>(&bf.R), 8);
    std::uint32_t count = get_u32();
    std::vector<std::string> names(count);
    for (auto& nm : names) {
        std::uint32_t len = get_u32();
        nm.resize(len);
        in.read(nm.data(), len);
    }
    for (std::uint32_t k = 0; k < count; ++k) {
        std::vector<double> data(static_cast<std::size_t>(bf.n) * bf.n);
        in.read(reinterpret_cast<char*>(data.data()),
                static_cast<std::streamsize>(data.size() * sizeof(double)));
        bf.fields.emplace_back(names[k], std::move(data));
    }
    if (!in) throw IoError("truncated binary field file: " + path);
    return bf;
}

void write_profile_csv(const std::string& path, const RadialSolution& sol) {
    std::ostringstream os;
    os << "r,u,du,v,dv,eta\n";
    for (int i = 0; i < sol.grid.size(); ++i) {
        double r = sol.grid.nodes[i];
        os << format_17g(r) << ',' << format_17g(sol.u.values[i]) << ','
           << format_17g(sol.u.derivs[i]) << ',' << format_17g(sol.v.values[i]) << ','
           << format_17g(sol.v.derivs[i]) << ',' << format_17g(std::log(sol.metric_at(r)))
           << '\n';
    }
    write_text_file(path, os.str());
}

namespace {
nlohmann::json quantity_json(const Quantity& q) {
    if (!q.computed) return nullptr;
    return q.value;
}
}  // namespace

nlohmann::json report_to_json(const ObservableReport& rep) {
    nlohmann::json j;
    j["flux"] = quantity_json(rep.flux);
    j["energy"] = quantity_json(rep.energy);
    j["total_curvature"] = quantity_json(rep.total_curvature);
    j["deficit_angle"] = quantity_json(rep.deficit_angle);
    j["current_flux"] = quantity_json(rep.current_flux);
    if (rep.current_flux.computed) {
        j["current_flux_from_energy"] = rep.current_flux_from_energy;
        j["current_flux_discrepancy"] = rep.current_flux_discrepancy;
        j["current_flux_identity_residual"] = rep.current_flux_identity_residual;
    }
    nlohmann::json decay;
    if (rep.radial) {
        decay["alpha"] = rep.alpha_fit;
        decay["alpha_ci"] = rep.alpha_ci;
        decay["beta"] = rep.beta_fit;
        decay["beta_ci"] = rep.beta_ci;
    } else {
        auto put = [&](const char* name, const DecayFit& f) {
            if (f.valid) {
                decay[name] = f.exponent;
                decay[std::string(name) + "_ci"] = f.ci;
            } else {
                decay[name] = nullptr;
            }
        };
        put("b_u", rep.decay.b_u);
        put("b_grad", rep.decay.b_grad);
        put("b_F12", rep.decay.b_F12);
        decay["offset_F12_u"] = rep.decay.offset_F12_u;
        decay["eta_slope"] = rep.decay.eta_slope;
        decay["eta_slope_ci"] = rep.decay.eta_slope_ci;
    }
    j["decay"] = decay;
    nlohmann::json errs;
    auto pute = [&](const char* name, const Quantity& q) {
        if (q.computed) errs[name] = q.error;
    };
    pute("flux", rep.flux);
    pute("energy", rep.energy);
    pute("total_curvature", rep.total_curvature);
    pute("current_flux", rep.current_flux);
    j["errors"] = errs;
    j["converged"] = rep.converged;
    j["notes"] = rep.notes;
    return j;
}

std::string report_csv_header() {
    return "status,flux,energy,total_curvature,deficit_angle,current_flux,b_u,b_grad,b_F12,"
           "offset_F12_u,eta_slope,alpha,beta,flux_err,energy_err,curvature_err";
}

std::string report_csv_line(const ObservableReport& rep) {
    auto num = [](bool ok, double v) { return ok ? format_17g(v) : std::string(); };
    std::vector<std::string> cols;
    cols.push_back(rep.converged ? "ok" : "no-convergence");
    cols.push_back(num(rep.flux.computed, rep.flux.value));
    cols.push_back(num(rep.energy.computed, rep.energy.value));
    cols.push_back(num(rep.total_curvature.computed, rep.total_curvature.value));
    cols.push_back(num(rep.deficit_angle.computed, rep.deficit_angle.value));
    cols.push_back(num(rep.current_flux.computed, rep.current_flux.value));
    if (rep.radial) {
        cols.insert(cols.end(), 5, "");
        cols.push_back(format_17g(rep.alpha_fit));
        cols.push_back(format_17g(rep.beta_fit));
    } else {
        cols.push_back(num(rep.decay.b_u.valid, rep.decay.b_u.exponent));
        cols.push_back(num(rep.decay.b_grad.valid, rep.decay.b_grad.exponent));
        cols.push_back(num(rep.decay.b_F12.valid, rep.decay.b_F12.exponent));
        cols.push_back(format_17g(rep.decay.offset_F12_u));
        cols.push_back(format_17g(rep.decay.eta_slope));
        cols.insert(cols.end(), 2, "");
    }
    cols.push_back(num(rep.flux.computed, rep.flux.error));
    cols.push_back(num(rep.energy.computed, rep.energy.error));
    cols.push_back(num(rep.total_curvature.computed, rep.total_curvature.error));
    std::string line;
    for (std::size_t k = 0; k < cols.size(); ++k) {
        if (k) line += ',';
        line += cols[k];
    }
    return line;
}

nlohmann::json planar_telemetry(const PlanarSolution& sol) {
    nlohmann::json j;
    j["outer_iters"] = sol.outer_iters;
    j["inner_iters_total"] = sol.inner_iters_total;
    j["converged"] = sol.converged;
    j["kappa_final"] = sol.kappa_final;
    j["residual_algebraic"] = sol.residual_algebraic;
    j["residual_pde"] = sol.residual_pde;
    j["max_monotonicity_violation"] = sol.max_monotonicity_violation;
    j["max_u"] = sol.max_u;
    j["residual_history"] = sol.residual_history;
    if (!sol.diagnostics.empty()) j["diagnostics"] = sol.diagnostics;
    return j;
}

nlohmann::json radial_telemetry(const RadialSolution& sol) {
    nlohmann::json j;
    j["a_star"] = sol.a_star;
    j["b_star"] = sol.b_star;
    j["outer_iters"] = sol.outer_iters;
    j["residual_u"] = sol.residual_u;
    j["residual_v"] = sol.residual_v;
    j["alpha_fit"] = sol.alpha_fit;
    j["beta_fit"] = sol.beta_fit;
    j["converged"] = sol.converged;
    j["change_history"] = sol.change_history;
    if (!sol.diagnostics.empty()) j["diagnostics"] = sol.diagnostics;
    return j;
}

}  // namespace vgl
