#include "cli/commands.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <limits>
#include <sstream>
#include <thread>

#include "cli/csv.hpp"
#include "cli/svg.hpp"
#include "echomem/afc.hpp"
#include "echomem/area.hpp"
#include "echomem/linear.hpp"
#include "echomem/optimize.hpp"

namespace echomem::cli {

namespace {

namespace fs = std::filesystem;

CsvComments comments(const RunConfig& cfg) {
    return {cfg.config_hash, cfg.canonical.dump()};
}

std::string out_path(const CommandOptions& opt, const RunConfig& cfg,
                     const std::string& stem) {
    fs::create_directories(opt.out_dir);
    return (fs::path(opt.out_dir) / (cfg.output_prefix + "_" + stem)).string();
}

// Deterministic parallel fill: cells are indexed, each worker pulls indices,
// results land in a preallocated buffer, so output bytes never depend on the
// jobs count.
void fill_cells(int rows, int cols, int jobs,
                const std::function<double(int, int)>& cell,
                std::vector<std::vector<double>>& out) {
    out.assign(rows, std::vector<double>(cols, 0.0));
    const int total = rows * cols;
    jobs = std::clamp(jobs, 1, 64);
    if (jobs == 1) {
        for (int k = 0; k < total; ++k) out[k / cols][k % cols] = cell(k / cols, k % cols);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    for (int t = 0; t < jobs; ++t)
        pool.emplace_back([&] {
            for (int k = next.fetch_add(1); k < total; k = next.fetch_add(1))
                out[k / cols][k % cols] = cell(k / cols, k % cols);
        });
    for (auto& th : pool) th.join();
}

std::complex<double> linear_transfer(const RunConfig& cfg, double depth,
                                     double omega) {
    switch (cfg.protocol) {
        case Protocol::CribBwd:
            return crib_backward_transfer_depth(depth, cfg.gamma_e,
                                                omega / cfg.delta_in);
        case Protocol::CribFwd:
            return crib_forward_transfer(depth, cfg.gamma_e, omega, cfg.delta_in);
        case Protocol::Gem:
            return gem_transfer(depth, cfg.gamma_e);
        case Protocol::AfcFwd: {
            // gamma_e is an extra dephasing on top of the comb's own Gamma_afc
            AfcComb comb = cfg.afc;
            comb.host.shape = LineShape::Lorentzian;
            return cfg.gamma_e * afc_forward_transfer(comb, omega, depth);
        }
        case Protocol::AfcBwd: {
            AfcComb comb = cfg.afc;
            comb.host.shape = LineShape::Lorentzian;
            comb.depth = depth;
            return cfg.gamma_e * afc_backward_transfer(comb, omega);
        }
        case Protocol::AfcDispersion: {
            AfcComb comb = cfg.afc;
            comb.host.shape = LineShape::Gaussian;
            comb.depth = depth;
            const double w = omega / cfg.delta_in;
            if (!(std::fabs(w) < 0.5 * comb.delta0 / cfg.delta_in))
                return std::numeric_limits<double>::quiet_NaN();
            return cfg.gamma_e * afc_dispersion_transfer(omega, comb);
        }
        case Protocol::Rose:
            throw ConfigError(
                "protocol 'rose' has no spectral response; use the map command");
    }
    return 0.0;
}

bool transfer_conjugates_input(Protocol p) {
    return p == Protocol::CribBwd || p == Protocol::CribFwd || p == Protocol::Gem;
}

// Depth scalar appropriate to the protocol for the single-depth commands.
double default_depth(const RunConfig& cfg) {
    switch (cfg.protocol) {
        case Protocol::AfcFwd:
        case Protocol::AfcBwd:
        case Protocol::AfcDispersion:
            return cfg.afc.depth;
        case Protocol::Gem:
            return cfg.gem.kappa_eff;
        default:
            return cfg.depth;
    }
}

} // namespace

std::string resolve_out_dir(const std::string& flag_value) {
    if (const char* env = std::getenv("ECHOMEM_OUT"); env && *env) return env;
    return flag_value;
}

int cmd_respond(const RunConfig& cfg, const CommandOptions& opt,
                std::string& summary) {
    if (!cfg.omega_grid)
        throw ConfigError("respond requires an 'omega_grid'");
    if (cfg.omega_grid->count < 1)
        throw ConfigError("respond: empty omega grid");
    const auto omegas = cfg.omega_grid->materialize();

    std::vector<std::vector<double>> rows;
    rows.reserve(omegas.size());
    for (double w : omegas) {
        const auto t = linear_transfer(cfg, default_depth(cfg), w);
        rows.push_back({w / cfg.delta_in, t.real(), t.imag(), std::abs(t),
                        std::arg(t), std::norm(t)});
    }
    const std::string csv =
        curve_csv(comments(cfg),
                  {"omega_over_Din", "re_T", "im_T", "abs_T", "phase_T", "eta"},
                  rows);
    const std::string path = out_path(opt, cfg, "transfer.csv");
    write_file(path, csv);
    if (opt.svg) {
        std::vector<double> x, eta, mag;
        for (const auto& r : rows) {
            x.push_back(r[0]);
            mag.push_back(r[3]);
            eta.push_back(r[5]);
        }
        write_file(out_path(opt, cfg, "transfer.svg"),
                   svg_line_plot(to_string(cfg.protocol) + " response", x,
                                 {mag, eta}, {"|T|", "eta"}));
    }

    // Numeric optimum next to the published closed-form optimum for the
    // forward protocol (the two disagree; both are reported, neither forced).
    summary = to_string(cfg.protocol) + ": wrote " + path + "\n";
    if (cfg.protocol == Protocol::CribFwd) {
        char buf[256];
        for (double w : {0.0, 0.5, 1.0}) {
            const auto od = crib_forward_optimal_depth(w * cfg.delta_in, cfg.delta_in,
                                                       cfg.gamma_e);
            const double wl = std::fabs(w) < 1e-12 ? 2.0
                                                   : (1.0 / w) * std::atan(2.0 * w) *
                                                         (1.0 + w * w);
            std::snprintf(buf, sizeof(buf),
                          "  w=%.2f numeric optimum alphaL=%.6f eta=%.6f "
                          "(literature closed form alphaL=%.6f)\n",
                          w, od.alpha_l, od.eta, wl);
            summary += buf;
        }
    }
    return kExitOk;
}

int cmd_map(const RunConfig& cfg, const CommandOptions& opt,
            std::string& summary) {
    std::vector<double> rows_axis, cols_axis;
    std::string row_name, col_name;
    std::function<double(int, int)> cell;

    const bool area_observable =
        cfg.observable == "eta_theta" || cfg.observable == "eta_tan";

    if (cfg.protocol == Protocol::Rose) {
        if (!cfg.theta_c_grid || !cfg.depth_grid)
            throw ConfigError("rose map requires 'theta_c_grid' and 'depth_grid'");
        rows_axis = cfg.theta_c_grid->materialize();
        cols_axis = cfg.depth_grid->materialize();
        row_name = "theta_c";
        col_name = "alphaz";
        cell = [&, rows_axis, cols_axis](int i, int j) {
            AreaProtocolConfig a = cfg.area;
            a.theta_c1 = a.theta_c2 = rows_axis[i];
            a.alpha0 = 1.0;
            a.length = std::max(cols_axis[j], 1e-9);
            const double theta = rose_closed_form(cols_axis[j], a);
            const auto [et, etan] = efficiency_measures(theta, a.theta_s0);
            return cfg.observable == "eta_tan" ? etan : et;
        };
    } else if (area_observable) {
        if (!cfg.depth_grid || !cfg.theta_s_grid)
            throw ConfigError("area map requires 'depth_grid' and 'theta_s_grid'");
        if (cfg.protocol != Protocol::CribFwd && cfg.protocol != Protocol::CribBwd)
            throw ConfigError("area observables exist for crib-fwd / crib-bwd only");
        rows_axis = cfg.depth_grid->materialize();
        cols_axis = cfg.theta_s_grid->materialize();
        row_name = "alphaL";
        col_name = "theta_s0";
        cell = [&, rows_axis, cols_axis](int i, int j) {
            AreaProtocolConfig a = cfg.area;
            a.theta_s0 = cols_axis[j];
            a.alpha0 = 1.0;
            a.length = std::max(rows_axis[i], 1e-9);
            a.geometry = cfg.protocol == Protocol::CribBwd ? Geometry::Backward
                                                           : Geometry::Forward;
            const double theta = a.geometry == Geometry::Backward
                                     ? crib_backward_area(0.0, a)
                                     : crib_forward_area(a.length, a);
            if (a.theta_s0 <= 0.0) return 0.0;
            const auto [et, etan] = efficiency_measures(theta, a.theta_s0);
            return cfg.observable == "eta_tan" ? etan : et;
        };
    } else if (cfg.protocol == Protocol::AfcDispersion) {
        if (!cfg.delta0_grid || !cfg.omega_grid)
            throw ConfigError(
                "afc-dispersion map requires 'delta0_grid' and 'omega_grid'");
        rows_axis = cfg.delta0_grid->materialize();
        cols_axis = cfg.omega_grid->materialize();
        row_name = "delta0_over_Din";
        col_name = "omega_over_Din";
        cell = [&, rows_axis, cols_axis](int i, int j) {
            RunConfig c = cfg;
            c.afc.delta0 = rows_axis[i] * cfg.delta_in;
            const auto t = linear_transfer(c, cfg.afc.depth, cols_axis[j]);
            return std::norm(t);
        };
    } else {
        if (!cfg.depth_grid || !cfg.omega_grid)
            throw ConfigError("map requires 'depth_grid' and 'omega_grid'");
        rows_axis = cfg.depth_grid->materialize();
        cols_axis = cfg.omega_grid->materialize();
        row_name = cfg.protocol == Protocol::Gem ? "kappa_eff" : "alphaL";
        col_name = "omega_over_Din";
        cell = [&, rows_axis, cols_axis](int i, int j) {
            return std::norm(linear_transfer(cfg, rows_axis[i], cols_axis[j]));
        };
    }

    if (rows_axis.size() * cols_axis.size() > 4000000)
        throw ConfigError("map grid exceeds the 4e6-cell cap; shrink the grids");

    std::vector<std::vector<double>> cells;
    fill_cells(static_cast<int>(rows_axis.size()),
               static_cast<int>(cols_axis.size()), opt.jobs, cell, cells);

    const std::string path = out_path(opt, cfg, "map.csv");
    write_file(path, matrix_csv(comments(cfg), row_name, col_name, rows_axis,
                                cols_axis, cells));
    if (opt.svg)
        write_file(out_path(opt, cfg, "map.svg"),
                   svg_heatmap(to_string(cfg.protocol) + " " + cfg.observable,
                               rows_axis, cols_axis, cells));
    summary = to_string(cfg.protocol) + ": wrote " + path + " (" +
              std::to_string(rows_axis.size()) + "x" +
              std::to_string(cols_axis.size()) + ")\n";
    return kExitOk;
}

int cmd_echo(const RunConfig& cfg, const CommandOptions& opt,
             std::string& summary) {
    if (cfg.protocol == Protocol::Rose || cfg.protocol == Protocol::AfcDispersion)
        throw ConfigError("echo supports crib-fwd, crib-bwd, gem, afc-fwd, afc-bwd");

    num::TransformConvention grid{cfg.pulse.samples,
                                  cfg.pulse.span / cfg.pulse.samples};
    const double duration = 1.0 / (cfg.pulse.spectral_width * cfg.delta_in);
    const Pulse input = gaussian_pulse(duration, cfg.pulse.amplitude, grid);

    TransferFunction tf;
    tf.omega_grid = frequency_grid(grid);
    tf.values.resize(grid.n);
    tf.conjugate_input = transfer_conjugates_input(cfg.protocol);
    for (int j = 0; j < grid.n; ++j)
        tf.values[j] = linear_transfer(cfg, default_depth(cfg), tf.omega_grid[j]);

    EchoResult r = apply_transfer(input, tf);
    if (r.aliasing_warning) {
        char buf[128];
        std::snprintf(buf, sizeof(buf),
                      "aliasing: %.2e of spectral energy in the outer bins\n",
                      r.edge_energy_fraction);
        if (opt.strict)
            throw std::runtime_error(std::string("strict mode: ") + buf);
        summary += std::string("warning: ") + buf;
    }

    if (cfg.protocol == Protocol::Gem && cfg.gem_forward) {
        const GemConfig& g = cfg.gem;
        for (int k = 0; k < grid.n; ++k) {
            const double t = r.echo.time(k);
            if (t - g.t_e > -(g.t1 + g.t_m())) {
                const double phi = gem_forward_phase(t, g);
                r.echo.envelope[k] *= std::complex<double>(std::cos(phi),
                                                           std::sin(phi));
            } else {
                r.echo.envelope[k] = 0.0; // outside the log domain, no signal
            }
        }
    }

    auto dump_pulse = [&](const Pulse& p, const std::string& stem) {
        std::ostringstream os;
        os << "# echomem_csv_version=1\n";
        os << "# config_hash=" << cfg.config_hash << "\n";
        os << "# config=" << cfg.canonical.dump() << "\n";
        write_pulse_csv(os, p);
        write_file(out_path(opt, cfg, stem), os.str());
    };
    dump_pulse(input, "input.csv");
    dump_pulse(r.echo, "echo.csv");

    const double eff = energy_efficiency(input, r.echo);
    const double din = rms_duration(input);
    const double dout = r.echo.energy() > 0.0 ? rms_duration(r.echo) : 0.0;
    std::vector<std::vector<double>> mrows{
        {eff, din, dout, dout / din, spectral_width_hwem(input),
         r.edge_energy_fraction}};
    write_file(out_path(opt, cfg, "echo_metrics.csv"),
               curve_csv(comments(cfg),
                         {"energy_efficiency", "input_rms_duration",
                          "echo_rms_duration", "stretch_factor",
                          "input_spectral_width", "edge_energy_fraction"},
                         mrows));
    if (opt.svg) {
        std::vector<double> t(grid.n), ain(grid.n), aout(grid.n);
        for (int k = 0; k < grid.n; ++k) {
            t[k] = grid.time(k);
            ain[k] = std::abs(input.envelope[k]);
            aout[k] = std::abs(r.echo.envelope[k]);
        }
        write_file(out_path(opt, cfg, "echo.svg"),
                   svg_line_plot("input and echo envelopes", t, {ain, aout},
                                 {"input", "echo"}));
    }

    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "energy efficiency %.6f, rms stretch %.4f\n", eff, dout / din);
    summary += to_string(cfg.protocol) + ": " + buf;
    return kExitOk;
}

int cmd_afc_design(const RunConfig& cfg, const CommandOptions& opt,
                   std::string& summary) {
    const auto rep = afc_design_search(cfg.design.bandwidth * cfg.delta_in,
                                       cfg.design.finesse, cfg.design.delta0,
                                       cfg.design.depth, cfg.design.threshold);
    nlohmann::json j;
    j["config_hash"] = cfg.config_hash;
    j["config"] = cfg.canonical;
    j["feasible"] = rep.feasible;
    j["finesse"] = rep.finesse;
    j["delta0_over_Din"] = rep.delta0 / cfg.delta_in;
    j["depth"] = rep.depth;
    j["worst_eta"] = rep.worst_eta;
    j["gamma_afc"] = rep.gamma_afc;
    j["worst_eta_with_dephasing"] = rep.worst_eta * rep.gamma_afc * rep.gamma_afc;
    j["mean_eta"] = rep.mean_eta;
    j["plateau"] = {rep.plateau_lo / cfg.delta_in, rep.plateau_hi / cfg.delta_in};
    j["threshold"] = cfg.design.threshold;
    write_file(out_path(opt, cfg, "design.json"), j.dump(2) + "\n");

    if (rep.feasible) {
        const AfcComb comb = rep.comb(cfg.delta_in);
        std::vector<std::vector<double>> rows;
        const int n = 161;
        for (int i = 0; i < n; ++i) {
            const double w =
                (-0.49 + 0.98 * i / (n - 1)) * rep.delta0 / cfg.delta_in;
            const auto chi = chi_total(w * cfg.delta_in, comb);
            const auto t = afc_dispersion_transfer(w * cfg.delta_in, comb);
            rows.push_back({w, chi.real(), chi.imag(), std::norm(t)});
        }
        write_file(out_path(opt, cfg, "design_dispersion.csv"),
                   curve_csv(comments(cfg),
                             {"omega_over_Din", "chi_prime", "chi_doubleprime",
                              "eta"},
                             rows));
    }

    char buf[256];
    std::snprintf(buf, sizeof(buf),
                  "%s: f=%.4g delta0=%.4g depth=%.4g worst_eta=%.4f "
                  "mean_eta=%.4f plateau=[%.3f,%.3f]\n",
                  rep.feasible ? "design found" : "no design meets threshold",
                  rep.finesse, rep.delta0 / cfg.delta_in, rep.depth,
                  rep.worst_eta, rep.mean_eta, rep.plateau_lo / cfg.delta_in,
                  rep.plateau_hi / cfg.delta_in);
    summary += buf;
    return rep.feasible ? kExitOk : kExitInfeasible;
}

int cmd_verify(const VerifyOptions& vopts, const CommandOptions& opt,
               std::string& summary) {
    (void)opt;
    const auto checks = run_verification(vopts);
    summary = render_report(checks);
    if (checks.empty()) {
        summary += "no checks matched the filter\n";
        return kExitValidation;
    }
    summary += all_pass(checks) ? "verification: all checks passed\n"
                                : "verification: FAILURES present\n";
    return all_pass(checks) ? kExitOk : kExitNumerical;
}

} // namespace echomem::cli
