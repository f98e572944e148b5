#include "core/config.hpp"

#include <fstream>
#include <set>

#include "core/errors.hpp"

namespace vgl {

namespace {

const std::set<std::string> kTopKeys = {"lambda", "G", "g0", "points", "N", "grid", "radial",
                                        "solver", "output"};
const std::set<std::string> kGridKeys = {"R", "n"};
const std::set<std::string> kRadialKeys = {"r_min", "r_max", "nodes"};
const std::set<std::string> kSolverKeys = {"tol", "max_iter", "max_inner", "omega",
                                           "bisect_tol", "tail_tol", "metric", "sign"};
const std::set<std::string> kOutputKeys = {"binary"};

void check_keys(const nlohmann::json& j, const std::set<std::string>& allowed,
                const std::string& where) {
    for (auto it = j.begin(); it != j.end(); ++it)
        if (!allowed.count(it.key()))
            throw ValidationError("unknown config key '" + where + it.key() + "'");
}

}  // namespace

nlohmann::json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config file: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw ValidationError("config is not valid JSON: " + std::string(e.what()));
    }
    return j;
}

SolverConfig parse_config(const nlohmann::json& j) {
    if (!j.is_object()) throw ValidationError("config root must be a JSON object");
    check_keys(j, kTopKeys, "");

    SolverConfig c;
    auto require = [&](const char* key) {
        if (!j.contains(key)) throw ValidationError(std::string("missing config key '") + key + "'");
        return j.at(key);
    };
    c.params.lambda = require("lambda").get<double>();
    c.params.G = require("G").get<double>();
    c.params.g0 = require("g0").get<double>();

    if (j.contains("points")) {
        for (const auto& pt : j.at("points")) {
            if (!pt.is_array() || pt.size() != 2)
                throw ValidationError("points entries must be [x, y] pairs");
            c.params.points.push_back({pt[0].get<double>(), pt[1].get<double>()});
        }
        if (j.contains("N") && j.at("N").get<int>() != c.params.N())
            throw ValidationError("N disagrees with the number of points");
    } else if (j.contains("N")) {
        int N = j.at("N").get<int>();
        if (N < 0) throw ValidationError("N must be >= 0");
        c.params.points.assign(N, Vec2{0.0, 0.0});
    } else {
        throw ValidationError("config needs 'points' (or 'N' for coincident vortices)");
    }

    if (j.contains("grid")) {
        check_keys(j.at("grid"), kGridKeys, "grid.");
        c.has_grid = true;
        c.R = j.at("grid").at("R").get<double>();
        c.n = j.at("grid").at("n").get<int>();
    }
    if (j.contains("radial")) {
        check_keys(j.at("radial"), kRadialKeys, "radial.");
        c.has_radial = true;
        c.r_min = j.at("radial").at("r_min").get<double>();
        c.r_max = j.at("radial").at("r_max").get<double>();
        c.radial_nodes = j.at("radial").at("nodes").get<int>();
    }
    if (!c.has_grid && !c.has_radial)
        throw ValidationError("config needs a 'grid' (planar) or 'radial' section");

    if (j.contains("solver")) {
        const auto& s = j.at("solver");
        check_keys(s, kSolverKeys, "solver.");
        if (s.contains("tol")) {
            c.tol = s.at("tol").get<double>();
            c.tol_set = true;
        }
        if (s.contains("max_iter")) c.max_iter = s.at("max_iter").get<int>();
        if (s.contains("max_inner")) c.max_inner = s.at("max_inner").get<int>();
        if (s.contains("omega")) c.omega = s.at("omega").get<double>();
        if (s.contains("bisect_tol")) c.bisect_tol = s.at("bisect_tol").get<double>();
        if (s.contains("tail_tol")) c.tail_tol = s.at("tail_tol").get<double>();
        if (s.contains("metric")) {
            c.metric_mode = s.at("metric").get<std::string>();
            if (c.metric_mode != "power-law" && c.metric_mode != "self-consistent")
                throw ValidationError("solver.metric must be 'power-law' or 'self-consistent'");
        }
        if (s.contains("sign")) {
            std::string sign = s.at("sign").get<std::string>();
            if (sign != "upper" && sign != "lower")
                throw ValidationError("solver.sign must be 'upper' or 'lower'");
            c.upper_sign = sign == "upper";
        }
    }
    if (j.contains("output")) {
        check_keys(j.at("output"), kOutputKeys, "output.");
        if (j.at("output").contains("binary"))
            c.write_binary = j.at("output").at("binary").get<bool>();
    }
    return c;
}

void apply_override(nlohmann::json& j, const std::string& key_eq_value) {
    auto eq = key_eq_value.find('=');
    if (eq == std::string::npos)
        throw ValidationError("override must look like key=value: " + key_eq_value);
    std::string key = key_eq_value.substr(0, eq);
    std::string value = key_eq_value.substr(eq + 1);

    // split dotted path
    std::vector<std::string> parts;
    std::size_t pos = 0;
    while (pos != std::string::npos) {
        auto dot = key.find('.', pos);
        parts.push_back(key.substr(pos, dot == std::string::npos ? dot : dot - pos));
        pos = dot == std::string::npos ? dot : dot + 1;
    }
    if (parts.empty()) throw ValidationError("empty override key");

    // the path must name a known config key
    const std::set<std::string>* allowed = &kTopKeys;
    if (parts.size() == 2) {
        if (parts[0] == "grid") allowed = &kGridKeys;
        else if (parts[0] == "radial") allowed = &kRadialKeys;
        else if (parts[0] == "solver") allowed = &kSolverKeys;
        else if (parts[0] == "output") allowed = &kOutputKeys;
        else throw ValidationError("unknown override section '" + parts[0] + "'");
    } else if (parts.size() != 1) {
        throw ValidationError("override keys have at most two components: " + key);
    }
    if (!allowed->count(parts.back()))
        throw ValidationError("unknown override key '" + key + "'");

    nlohmann::json parsed;
    try {
        parsed = nlohmann::json::parse(value);
    } catch (...) {
        parsed = value;  // plain string
    }
    nlohmann::json* node = &j;
    for (std::size_t k = 0; k + 1 < parts.size(); ++k) node = &(*node)[parts[k]];
    (*node)[parts.back()] = parsed;
}

nlohmann::json config_to_json(const SolverConfig& c) {
    nlohmann::json j;
    j["lambda"] = c.params.lambda;
    j["G"] = c.params.G;
    j["g0"] = c.params.g0;
    auto pts = nlohmann::json::array();
    for (const auto& p : c.params.points) pts.push_back({p.x, p.y});
    j["points"] = pts;
    j["N"] = c.params.N();
    if (c.has_grid) j["grid"] = {{"R", c.R}, {"n", c.n}};
    if (c.has_radial)
        j["radial"] = {{"r_min", c.r_min}, {"r_max", c.r_max}, {"nodes", c.radial_nodes}};
    j["solver"] = {{"tol", c.tol},           {"max_iter", c.max_iter},
                   {"max_inner", c.max_inner}, {"omega", c.omega},
                   {"bisect_tol", c.bisect_tol}, {"tail_tol", c.tail_tol},
                   {"metric", c.metric_mode},  {"sign", c.upper_sign ? "upper" : "lower"}};
    j["output"] = {{"binary", c.write_binary}};
    return j;
}

RadialOptions SolverConfig::radial_options() const {
    RadialOptions o;
    o.tol = tol_set ? tol : 1e-7;
    o.max_iter = max_iter;
    o.omega = omega;
    o.metric_mode = metric_mode == "self-consistent" ? RadialMetricMode::self_consistent
                                                     : RadialMetricMode::pure_power_law;
    o.r_min = r_min;
    o.r_max = r_max;
    o.nodes = radial_nodes;
    o.shoot.bisect_tol = bisect_tol;
    o.shoot.tail_tol = tail_tol;
    return o;
}

PlanarOptions SolverConfig::planar_options() const {
    PlanarOptions o;
    o.tol = tol;
    o.max_outer = max_iter;
    o.max_inner = max_inner;
    o.omega = omega;
    return o;
}

}  // namespace vgl
