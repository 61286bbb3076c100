#include "cli/config.hpp"

#include <cstdint>
#include <fstream>

namespace echomem::cli {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& field, const std::string& why) {
    throw ConfigError("config field '" + field + "': " + why);
}

double get_num(const json& j, const std::string& key, double fallback,
               bool required = false) {
    if (!j.contains(key)) {
        if (required) fail(key, "missing required number");
        return fallback;
    }
    if (!j.at(key).is_number()) fail(key, "expected a number");
    return j.at(key).get<double>();
}

int get_int(const json& j, const std::string& key, int fallback) {
    if (!j.contains(key)) return fallback;
    if (!j.at(key).is_number_integer()) fail(key, "expected an integer");
    return j.at(key).get<int>();
}

std::string get_str(const json& j, const std::string& key,
                    const std::string& fallback) {
    if (!j.contains(key)) return fallback;
    if (!j.at(key).is_string()) fail(key, "expected a string");
    return j.at(key).get<std::string>();
}

GridSpec get_grid(const json& j, const std::string& key) {
    const json& g = j.at(key);
    GridSpec s;
    s.min = get_num(g, "min", 0.0, true);
    s.max = get_num(g, "max", 0.0, true);
    s.count = get_int(g, "count", 1);
    if (s.count < 1) fail(key + ".count", "must be >= 1");
    if (!(s.max >= s.min)) fail(key, "requires max >= min");
    if (s.count > 2000000) fail(key + ".count", "grid too large (cap 2e6 cells per axis); shrink it");
    return s;
}

Range get_range(const json& g, const std::string& key) {
    Range r;
    r.lo = get_num(g, "min", 0.0, true);
    r.hi = get_num(g, "max", r.lo);
    r.count = get_int(g, "count", 1);
    if (r.count < 1 || !(r.hi >= r.lo)) fail(key, "invalid range");
    return r;
}

} // namespace

Protocol protocol_from_string(const std::string& s) {
    if (s == "crib-fwd") return Protocol::CribFwd;
    if (s == "crib-bwd") return Protocol::CribBwd;
    if (s == "gem") return Protocol::Gem;
    if (s == "afc-fwd") return Protocol::AfcFwd;
    if (s == "afc-bwd") return Protocol::AfcBwd;
    if (s == "afc-dispersion") return Protocol::AfcDispersion;
    if (s == "rose") return Protocol::Rose;
    throw ConfigError("config field 'protocol': unknown protocol '" + s +
                      "' (expected crib-fwd, crib-bwd, gem, afc-fwd, afc-bwd, "
                      "afc-dispersion or rose)");
}

std::string to_string(Protocol p) {
    switch (p) {
        case Protocol::CribFwd: return "crib-fwd";
        case Protocol::CribBwd: return "crib-bwd";
        case Protocol::Gem: return "gem";
        case Protocol::AfcFwd: return "afc-fwd";
        case Protocol::AfcBwd: return "afc-bwd";
        case Protocol::AfcDispersion: return "afc-dispersion";
        case Protocol::Rose: return "rose";
    }
    return "?";
}

std::vector<double> GridSpec::materialize() const {
    std::vector<double> v(count);
    for (int i = 0; i < count; ++i)
        v[i] = count == 1 ? min : min + (max - min) * i / (count - 1);
    return v;
}

std::string fnv1a_hex(const std::string& bytes) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

RunConfig parse_config(const json& doc) {
    if (!doc.is_object()) throw ConfigError("config root must be a JSON object");
    RunConfig c;
    c.protocol = protocol_from_string(get_str(doc, "protocol", "crib-bwd"));
    c.gamma_e = get_num(doc, "gamma_e", 1.0);
    if (!(c.gamma_e >= 0.0 && c.gamma_e <= 1.0)) fail("gamma_e", "must be in [0,1]");
    c.depth = get_num(doc, "depth", 2.0);
    if (!(c.depth >= 0.0)) fail("depth", "must be >= 0");
    c.delta_in = get_num(doc, "delta_in", 1.0);
    if (!(c.delta_in > 0.0)) fail("delta_in", "must be > 0");
    const std::string shape = get_str(doc, "line_shape", "lorentzian");
    if (shape == "lorentzian") c.line_shape = LineShape::Lorentzian;
    else if (shape == "gaussian") c.line_shape = LineShape::Gaussian;
    else fail("line_shape", "expected 'lorentzian' or 'gaussian'");

    for (const auto& [key, slot] :
         std::initializer_list<std::pair<const char*, std::optional<GridSpec>*>>{
             {"omega_grid", &c.omega_grid},
             {"depth_grid", &c.depth_grid},
             {"theta_s_grid", &c.theta_s_grid},
             {"theta_c_grid", &c.theta_c_grid},
             {"delta0_grid", &c.delta0_grid}})
        if (doc.contains(key)) *slot = get_grid(doc, key);

    c.observable = get_str(doc, "observable", "eta");
    if (c.observable != "eta" && c.observable != "eta_theta" &&
        c.observable != "eta_tan")
        fail("observable", "expected eta, eta_theta or eta_tan");

    if (doc.contains("afc")) {
        const json& a = doc.at("afc");
        c.afc.finesse = get_num(a, "finesse", 10.0);
        c.afc.delta0 = get_num(a, "delta0", 1.25) * c.delta_in;
        c.afc.depth = get_num(a, "depth", c.depth);
        c.afc.delta_afc = get_num(a, "delta_afc", c.afc.delta0 / 20.0);
        c.afc.upsilon = c.afc.delta_afc / c.afc.finesse;
        if (!(c.afc.finesse > 1.0)) fail("afc.finesse", "must be > 1");
    } else {
        c.afc.depth = c.depth;
        c.afc.delta_afc = c.afc.delta0 / 20.0;
        c.afc.upsilon = c.afc.delta_afc / c.afc.finesse;
    }
    c.afc.host.delta_in = c.delta_in;
    c.afc.host.shape = c.protocol == Protocol::AfcDispersion
                           ? LineShape::Gaussian
                           : LineShape::Lorentzian;

    if (doc.contains("gem")) {
        const json& g = doc.at("gem");
        c.gem.kappa_eff = get_num(g, "kappa_eff", c.depth);
        c.gem.chi_grad = get_num(g, "chi_grad", 1.0);
        c.gem.t1 = get_num(g, "t1", 10.0);
        c.gem.t_e = get_num(g, "t_e", 0.0);
        c.gem.length = get_num(g, "length", 1.0);
        const std::string geo = get_str(g, "geometry", "forward");
        if (geo == "forward") c.gem_forward = true;
        else if (geo == "backward") c.gem_forward = false;
        else fail("gem.geometry", "expected 'forward' or 'backward'");
    } else {
        c.gem.kappa_eff = c.depth;
    }

    if (doc.contains("pulse")) {
        const json& p = doc.at("pulse");
        c.pulse.spectral_width = get_num(p, "spectral_width", 0.7);
        c.pulse.amplitude = get_num(p, "amplitude", 1.0);
        c.pulse.samples = get_int(p, "samples", 2048);
        c.pulse.span = get_num(p, "span", 200.0);
        if (!(c.pulse.spectral_width > 0.0)) fail("pulse.spectral_width", "must be > 0");
        if (c.pulse.samples < 16 || (c.pulse.samples & (c.pulse.samples - 1)))
            fail("pulse.samples", "must be a power of two >= 16");
        if (!(c.pulse.span > 0.0)) fail("pulse.span", "must be > 0");
    }

    if (doc.contains("area")) {
        const json& a = doc.at("area");
        c.area.theta_s0 = get_num(a, "theta_s0", 0.1);
        c.area.theta_c1 = get_num(a, "theta_c1", M_PI);
        c.area.theta_c2 = get_num(a, "theta_c2", M_PI);
        c.area.gamma_e = c.gamma_e;
        c.area.alpha0 = get_num(a, "alpha0", 1.0);
        c.area.length = get_num(a, "length", c.depth / std::max(c.area.alpha0, 1e-12));
        try {
            c.area.validate();
        } catch (const std::exception& e) {
            fail("area", e.what());
        }
    } else {
        c.area.gamma_e = c.gamma_e;
    }

    if (doc.contains("design")) {
        const json& d = doc.at("design");
        c.design.bandwidth = get_num(d, "bandwidth", 0.9);
        c.design.threshold = get_num(d, "threshold", 0.90);
        if (d.contains("finesse")) c.design.finesse = get_range(d.at("finesse"), "design.finesse");
        if (d.contains("delta0")) c.design.delta0 = get_range(d.at("delta0"), "design.delta0");
        if (d.contains("depth")) c.design.depth = get_range(d.at("depth"), "design.depth");
        if (!(c.design.bandwidth > 0.0)) fail("design.bandwidth", "must be > 0");
    }

    c.output_prefix = get_str(doc, "output_prefix", "run");
    for (char ch : c.output_prefix)
        if (!(std::isalnum(static_cast<unsigned char>(ch)) || ch == '_' || ch == '-'))
            fail("output_prefix", "use [A-Za-z0-9_-] only");

    c.canonical = doc;
    c.config_hash = fnv1a_hex(doc.dump());
    return c;
}

RunConfig load_config_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw ConfigError("cannot open config file: " + path);
    json doc;
    try {
        doc = json::parse(is);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config JSON parse error: ") + e.what());
    }
    return parse_config(doc);
}

} // namespace echomem::cli
