#include <cstdio>
#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "cli/commands.hpp"
#include "cli/config.hpp"

namespace {

using namespace echomem::cli;

struct CommonFlags {
    std::string config_path;
    std::string out_dir = "out";
    bool strict = false;
    bool svg = false;
    int jobs = 1;
};

void attach_common(CLI::App* app, CommonFlags& f, bool needs_config) {
    auto* copt = app->add_option("--config", f.config_path, "JSON configuration file");
    if (needs_config) copt->required();
    app->add_option("--out", f.out_dir, "output directory (ECHOMEM_OUT overrides)");
    app->add_flag("--strict", f.strict, "escalate aliasing warnings to errors");
    app->add_flag("--svg", f.svg, "also write SVG plots");
    app->add_option("--jobs", f.jobs, "worker threads for sweeps")
        ->check(CLI::Range(1, 64));
}

int dispatch(const std::string& cmd, const CommonFlags& f,
             const VerifyOptions& vopts) {
    CommandOptions opt;
    opt.out_dir = resolve_out_dir(f.out_dir);
    opt.strict = f.strict;
    opt.svg = f.svg;
    opt.jobs = f.jobs;

    std::string summary;
    int rc = kExitOk;
    if (cmd == "verify") {
        rc = cmd_verify(vopts, opt, summary);
    } else {
        const RunConfig cfg = load_config_file(f.config_path);
        if (cmd == "respond") rc = cmd_respond(cfg, opt, summary);
        else if (cmd == "map") rc = cmd_map(cfg, opt, summary);
        else if (cmd == "echo") rc = cmd_echo(cfg, opt, summary);
        else if (cmd == "afc-design") rc = cmd_afc_design(cfg, opt, summary);
    }
    std::cout << summary;
    return rc;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"echomem: photon-echo quantum-memory response curves, sweeps "
                 "and verification"};
    app.require_subcommand(1);

    CommonFlags f;
    VerifyOptions vopts;

    auto* respond = app.add_subcommand(
        "respond", "transfer function and spectral efficiency vs omega");
    attach_common(respond, f, true);
    auto* map = app.add_subcommand("map", "2-D efficiency sweeps to CSV matrix");
    attach_common(map, f, true);
    auto* echo = app.add_subcommand(
        "echo", "store and retrieve a Gaussian pulse, emit envelopes/metrics");
    attach_common(echo, f, true);
    auto* design = app.add_subcommand("afc-design",
                                      "search comb parameters for a target band");
    attach_common(design, f, true);
    auto* verify = app.add_subcommand(
        "verify", "run the oracle-vs-closed-form verification suite");
    attach_common(verify, f, false);
    verify->add_option("--only", vopts.only, "substring filter on check names");
    verify->add_option("--perturb", vopts.perturb,
                       "inject a fault into one closed form (self-test)");
    verify->add_option("--area-grid", vopts.area_grid,
                       "points per axis in the area-theorem sweeps")
        ->check(CLI::Range(4, 100));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : echomem::cli::kExitValidation;
    }

    const std::string cmd = app.get_subcommands().front()->get_name();
    try {
        return dispatch(cmd, f, vopts);
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumerical;
    }
}
