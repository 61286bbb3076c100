#include "echomem/area.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "echomem/quadrature.hpp"

namespace echomem {

namespace {

constexpr double kBifurcationTol = 1e-9;

void check_bifurcation(double theta, const char* who) {
    if (std::fabs(theta - M_PI) < kBifurcationTol)
        throw std::domain_error(std::string(who) +
                                ": area at the theta = pi bifurcation point");
}

double tan_half(double theta) { return std::tan(0.5 * theta); }

struct ControlState {
    double b1z = 0.0; // tan(theta1(z)/2)
    double b2z = 0.0; // tan(theta2(z)/2)
    double sin2_half_1 = 0.0, sin2_half_2 = 0.0;
    double cos1 = 0.0, cos2 = 0.0;
};

// Continuous through theta_c = pi: tan(pi/2) is huge-finite in floating
// point, so the ratios below land on the analytic limit.
ControlState control_state(double z, double theta_c1, double theta_c2,
                           double alpha0) {
    const double b1 = tan_half(theta_c1);
    const double b2 = tan_half(theta_c2);
    const double e = std::exp(alpha0 * z);
    const double es = std::exp(0.5 * alpha0 * z);
    ControlState s;
    s.b1z = b1 / es;
    s.b2z = b2 * (1.0 + b1 * b1) * es / (e + b1 * b1);
    auto fill = [](double b, double& sin2_half, double& cosv) {
        const double b2v = b * b;
        sin2_half = b2v / (1.0 + b2v);
        cosv = (1.0 - b2v) / (1.0 + b2v);
    };
    fill(s.b1z, s.sin2_half_1, s.cos1);
    fill(s.b2z, s.sin2_half_2, s.cos2);
    return s;
}

} // namespace

void AreaProtocolConfig::validate() const {
    if (!(theta_s0 >= 0.0) || theta_s0 >= M_PI)
        throw std::invalid_argument("AreaProtocolConfig: theta_s0 outside [0, pi)");
    if (!(theta_c1 >= 0.0 && theta_c1 <= M_PI) ||
        !(theta_c2 >= 0.0 && theta_c2 <= M_PI))
        throw std::invalid_argument("AreaProtocolConfig: control areas outside [0, pi]");
    if (!(gamma_e >= 0.0 && gamma_e <= 1.0))
        throw std::invalid_argument("AreaProtocolConfig: gamma_e outside [0, 1]");
    if (!(alpha0 >= 0.0) || !(length > 0.0))
        throw std::invalid_argument("AreaProtocolConfig: need alpha0 >= 0, length > 0");
}

double mccall_hahn_area(double z, double theta0, double alpha0) {
    if (!(theta0 >= 0.0 && theta0 <= M_PI))
        throw std::invalid_argument("mccall_hahn_area: theta0 outside [0, pi]");
    check_bifurcation(theta0, "mccall_hahn_area");
    return 2.0 * std::atan(tan_half(theta0) * std::exp(-0.5 * alpha0 * z));
}

double area_ode_rhs(double theta_e, double p_e, double w_e, double alpha0,
                    int geometry_sign) {
    const double c = std::cos(0.5 * theta_e);
    return geometry_sign * 0.5 * alpha0 *
           (2.0 * p_e * c * c + w_e * std::sin(theta_e));
}

double crib_backward_area(double z, const AreaProtocolConfig& cfg) {
    cfg.validate();
    check_bifurcation(cfg.theta_s0, "crib_backward_area");
    if (z < 0.0 || z > cfg.length)
        throw std::invalid_argument("crib_backward_area: z outside [0, L]");
    const double t0 = tan_half(cfg.theta_s0);
    const double a = cfg.alpha0;
    const double num = std::exp(-0.5 * a * z) -
                       std::exp(-a * (cfg.length - 0.5 * z));
    const double den = 1.0 + t0 * t0 * std::exp(-a * cfg.length);
    return 2.0 * std::atan(cfg.gamma_e * t0 * num / den);
}

double crib_forward_area(double z, const AreaProtocolConfig& cfg) {
    cfg.validate();
    check_bifurcation(cfg.theta_s0, "crib_forward_area");
    if (z < 0.0)
        throw std::invalid_argument("crib_forward_area: z must be >= 0");
    const double t0 = tan_half(cfg.theta_s0);
    const double az = cfg.alpha0 * z;
    const double num = az * std::exp(-0.5 * az);
    const double den = 1.0 + t0 * t0 * std::exp(-az);
    return 2.0 * std::atan(cfg.gamma_e * t0 * num / den);
}

std::pair<double, double> control_pulse_areas(double z, double theta_c1,
                                              double theta_c2, double alpha0) {
    if (!(theta_c1 >= 0.0 && theta_c1 <= M_PI) ||
        !(theta_c2 >= 0.0 && theta_c2 <= M_PI))
        throw std::invalid_argument("control_pulse_areas: areas outside [0, pi]");
    check_bifurcation(theta_c1, "control_pulse_areas");
    check_bifurcation(theta_c2, "control_pulse_areas");
    const ControlState s = control_state(z, theta_c1, theta_c2, alpha0);
    return {2.0 * std::atan(s.b1z), 2.0 * std::atan(s.b2z)};
}

EchoSource rose_sources(double z, const AreaProtocolConfig& cfg) {
    cfg.validate();
    const ControlState s = control_state(z, cfg.theta_c1, cfg.theta_c2, cfg.alpha0);
    EchoSource src;
    src.p_e = cfg.gamma_e * std::exp(-0.5 * cfg.alpha0 * z) * cfg.theta_s0 *
              s.sin2_half_1 * s.sin2_half_2;
    src.w_e = -s.cos1 * s.cos2;
    return src;
}

double rose_formal_solution(double z, const AreaProtocolConfig& cfg,
                            const RoseFormalOptions& opts) {
    cfg.validate();
    if (z < 0.0) throw std::invalid_argument("rose_formal_solution: z < 0");
    if (z == 0.0) return 0.0;
    const double a = cfg.alpha0;
    auto w_e = [&](double zz) { return rose_sources(zz, cfg).w_e; };
    auto integrand = [&](double zp) {
        const double inner = num::adaptive_simpson(w_e, zp, z, opts.tol).value;
        return rose_sources(zp, cfg).p_e * std::exp(0.5 * a * inner);
    };
    double integral = num::adaptive_simpson(integrand, 0.0, z, opts.tol).value;
    if (opts.verbatim_prefactor)
        integral *= cfg.gamma_e * cfg.theta_s0; // double-counted reading
    return 2.0 * std::atan(0.5 * a * integral);
}

double rose_closed_form(double z, const AreaProtocolConfig& cfg) {
    cfg.validate();
    if (z < 0.0) throw std::invalid_argument("rose_closed_form: z < 0");
    const double b1 = tan_half(cfg.theta_c1);
    const double b2 = tan_half(cfg.theta_c2);
    if (b1 == 0.0)
        throw std::domain_error("rose_closed_form: theta_c1 = 0 is singular");
    const double az = cfg.alpha0 * z;
    const double e = std::exp(az);
    const double b1sq = b1 * b1, b2sq = b2 * b2;
    const double inv_b1sq = 1.0 / b1sq;
    const double area_term =
        az + (1.0 - e) / ((1.0 + b1sq) * (1.0 + inv_b1sq * e)) +
        std::log1p(inv_b1sq) - std::log1p(inv_b1sq * e);
    const double m = b2sq * (1.0 + b1sq * b1sq) + 2.0 * b1sq * (1.0 + b2sq);
    const double phi = std::exp(0.5 * az) * b2sq * (1.0 + b1sq) * (1.0 + b1sq) *
                       (b1sq + e) / (b1sq * (b1sq * b1sq + m * e + e * e));
    return 2.0 * std::atan(0.5 * cfg.gamma_e * cfg.theta_s0 * phi * area_term);
}

std::pair<double, double> efficiency_measures(double theta_e, double theta_s0) {
    if (!(theta_s0 > 0.0))
        throw std::invalid_argument("efficiency_measures: theta_s0 must be > 0");
    const double r_theta = theta_e / theta_s0;
    const double r_tan = tan_half(theta_e) / tan_half(theta_s0);
    return {r_theta * r_theta, r_tan * r_tan};
}

std::vector<std::vector<double>> rose_gain_map(
    const std::vector<double>& theta_c_grid,
    const std::vector<double>& alpha_z_grid, const AreaProtocolConfig& cfg) {
    std::vector<std::vector<double>> eta(theta_c_grid.size());
    for (std::size_t i = 0; i < theta_c_grid.size(); ++i) {
        eta[i].resize(alpha_z_grid.size());
        AreaProtocolConfig c = cfg;
        c.theta_c1 = c.theta_c2 = theta_c_grid[i];
        c.alpha0 = 1.0;
        for (std::size_t j = 0; j < alpha_z_grid.size(); ++j) {
            const double theta = rose_closed_form(alpha_z_grid[j], c);
            eta[i][j] = efficiency_measures(theta, cfg.theta_s0).first;
        }
    }
    return eta;
}

AreaProfile crib_area_profile(const AreaProtocolConfig& cfg, int samples) {
    cfg.validate();
    if (samples < 2) throw std::invalid_argument("crib_area_profile: samples < 2");
    AreaProfile p;
    p.z_grid.resize(samples);
    p.theta_values.resize(samples);
    for (int i = 0; i < samples; ++i) {
        const double z = cfg.length * i / (samples - 1);
        p.z_grid[i] = z;
        p.theta_values[i] = cfg.geometry == Geometry::Backward
                                ? crib_backward_area(z, cfg)
                                : crib_forward_area(z, cfg);
    }
    for (int i = 1; i < samples; ++i)
        if (std::fabs(p.theta_values[i] - p.theta_values[i - 1]) > 0.5 * M_PI)
            throw std::runtime_error("crib_area_profile: branch jump detected");
    const double emitted = cfg.geometry == Geometry::Backward
                               ? p.theta_values.front()
                               : p.theta_values.back();
    if (cfg.theta_s0 > 0.0) {
        const auto [et, etan] = efficiency_measures(emitted, cfg.theta_s0);
        p.efficiency_theta = et;
        p.efficiency_tan = etan;
    }
    return p;
}

} // namespace echomem
