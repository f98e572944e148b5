// vgl command-line front end.  Links only the C API of libvgl.
#include <cstdio>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "vgl/vgl.h"

namespace {

struct CommonArgs {
    std::string config_path;
    std::string out_dir = "runs";
    std::vector<std::string> overrides;
    std::string sweep_spec;
    bool quiet = false;
};

void add_common(CLI::App* cmd, CommonArgs& args, bool need_config) {
    auto* c = cmd->add_option("--config", args.config_path, "JSON config file");
    if (need_config) c->required();
    cmd->add_option("--out", args.out_dir, "output directory (default: runs)");
    cmd->add_option("--set", args.overrides, "override, KEY=VAL (repeatable)");
    cmd->add_flag("--quiet", args.quiet, "suppress progress output");
}

int load_config(const CommonArgs& args, vgl_config** cfg) {
    vgl_status st = vgl_config_load(args.config_path.c_str(), cfg);
    if (st != VGL_OK) {
        std::fprintf(stderr, "error: %s\n", vgl_last_error());
        return st == VGL_ERR_IO ? 4 : 2;
    }
    for (const auto& kv : args.overrides) {
        st = vgl_config_set(*cfg, kv.c_str());
        if (st != VGL_OK) {
            std::fprintf(stderr, "error: %s\n", vgl_last_error());
            vgl_config_free(*cfg);
            *cfg = nullptr;
            return 2;
        }
    }
    return 0;
}

int run_plain(const std::string& command, const CommonArgs& args) {
    vgl_config* cfg = nullptr;
    int rc = load_config(args, &cfg);
    if (rc != 0) return rc;
    char* run_dir = nullptr;
    char* message = nullptr;
    rc = vgl_run(command.c_str(), cfg, args.out_dir.c_str(), args.quiet ? 1 : 0, &run_dir,
                 &message);
    if (message && *message) std::fprintf(rc == 0 ? stdout : stderr, "%s\n", message);
    vgl_string_free(run_dir);
    vgl_string_free(message);
    vgl_config_free(cfg);
    return rc;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"vgl: gravitating Ginzburg-Landau multivortex solver"};
    app.require_subcommand(1);

    CommonArgs planar_args, radial_args, obs_args, sweep_args, selftest_args;

    auto* planar = app.add_subcommand("solve-planar", "self-dual planar solve (lambda = 1)");
    add_common(planar, planar_args, true);
    auto* radial = app.add_subcommand("solve-radial", "radial solve for any lambda > 0");
    add_common(radial, radial_args, true);
    auto* obs = app.add_subcommand("observables", "solve and emit the observable report only");
    add_common(obs, obs_args, true);
    auto* sweep = app.add_subcommand("sweep", "run a parameter sweep, aggregate one CSV");
    add_common(sweep, sweep_args, true);
    sweep->add_option("--sweep", sweep_args.sweep_spec, "axis spec KEY=V1,V2,... "
                                                        "(KEY in G, lambda, N, g0)")
        ->required();
    auto* selftest = app.add_subcommand("self-test", "run the built-in closed-form checks");
    add_common(selftest, selftest_args, false);

    CLI11_PARSE(app, argc, argv);

    if (planar->parsed()) return run_plain("solve-planar", planar_args);
    if (radial->parsed()) return run_plain("solve-radial", radial_args);
    if (obs->parsed()) return run_plain("observables", obs_args);
    if (selftest->parsed()) return vgl_self_test(selftest_args.quiet ? 1 : 0) == 0 ? 0 : 1;

    // sweep
    auto eq = sweep_args.sweep_spec.find('=');
    if (eq == std::string::npos) {
        std::fprintf(stderr, "error: --sweep needs KEY=V1,V2,...\n");
        return 2;
    }
    std::string axis = sweep_args.sweep_spec.substr(0, eq);
    std::string values = sweep_args.sweep_spec.substr(eq + 1);
    vgl_config* cfg = nullptr;
    int rc = load_config(sweep_args, &cfg);
    if (rc != 0) return rc;
    char* run_dir = nullptr;
    char* message = nullptr;
    rc = vgl_run_sweep(cfg, axis.c_str(), values.c_str(), sweep_args.out_dir.c_str(),
                       sweep_args.quiet ? 1 : 0, &run_dir, &message);
    if (message && *message) std::fprintf(rc == 0 ? stdout : stderr, "%s\n", message);
    vgl_string_free(run_dir);
    vgl_string_free(message);
    vgl_config_free(cfg);
    return rc;
}
