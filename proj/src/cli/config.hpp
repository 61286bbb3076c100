#ifndef ECHOMEM_CLI_CONFIG_HPP
#define ECHOMEM_CLI_CONFIG_HPP

#include <optional>
#include <string>

#include <json.hpp>

#include "echomem/afc.hpp"
#include "echomem/area.hpp"
#include "echomem/line.hpp"
#include "echomem/linear.hpp"

namespace echomem::cli {

enum class Protocol { CribFwd, CribBwd, Gem, AfcFwd, AfcBwd, AfcDispersion, Rose };

Protocol protocol_from_string(const std::string& s);
std::string to_string(Protocol p);

struct GridSpec {
    double min = 0.0;
    double max = 0.0;
    int count = 1;
    std::vector<double> materialize() const;
};

struct PulseSpec {
    double spectral_width = 0.7; // HWe^-1M of |spectrum|^2, units of delta_in
    double amplitude = 1.0;
    int samples = 2048;
    double span = 200.0; // time-grid span, units of 1/delta_in
};

struct DesignSpec {
    double bandwidth = 0.9;
    double threshold = 0.90;
    Range finesse{10.0, 10.0, 1};
    Range delta0{0.8, 2.0, 13};
    Range depth{80.0, 80.0, 1};
};

// Parsed and schema-validated run configuration; invalid documents throw
// ConfigError with a field-level diagnostic (CLI exit code 2).
struct RunConfig {
    Protocol protocol = Protocol::CribBwd;
    double gamma_e = 1.0;
    double depth = 2.0; // alpha_R(0)L, or kappa_eff for GEM
    double delta_in = 1.0;
    LineShape line_shape = LineShape::Lorentzian;
    std::optional<GridSpec> omega_grid;
    std::optional<GridSpec> depth_grid;
    std::optional<GridSpec> theta_s_grid;
    std::optional<GridSpec> theta_c_grid;
    std::optional<GridSpec> delta0_grid;
    std::string observable = "eta"; // eta | eta_theta | eta_tan
    AfcComb afc;
    GemConfig gem;
    bool gem_forward = true;
    PulseSpec pulse;
    AreaProtocolConfig area;
    DesignSpec design;
    std::string output_prefix = "run";

    nlohmann::json canonical; // the document the outputs embed
    std::string config_hash;  // FNV-1a 64 of the canonical dump
};

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

RunConfig parse_config(const nlohmann::json& doc);
RunConfig load_config_file(const std::string& path);

std::string fnv1a_hex(const std::string& bytes);

} // namespace echomem::cli

#endif
