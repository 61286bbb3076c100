#ifndef ECHOMEM_AREA_HPP
#define ECHOMEM_AREA_HPP

#include <cmath>
#include <utility>
#include <vector>

namespace echomem {

enum class Geometry { Forward, Backward };

// Inputs for the pulse-area protocol solutions. All areas are radians;
// depths are the dimensionless alpha_R(0) * z.
struct AreaProtocolConfig {
    double theta_s0 = 0.1;       // input signal area, [0, pi)
    double theta_c1 = M_PI;      // first control area, [0, pi]
    double theta_c2 = M_PI;      // second control area, [0, pi]
    double gamma_e = 1.0;        // dephasing factor at echo time
    double alpha0 = 1.0;         // resonant absorption alpha_R(0)
    double length = 1.0;         // cell length L
    Geometry geometry = Geometry::Backward;

    void validate() const;
};

struct AreaProfile {
    std::vector<double> z_grid;
    std::vector<double> theta_values;
    double efficiency_theta = 0.0; // at the emission point
    double efficiency_tan = 0.0;
};

// Phasing polarization amplitude and resonant inversion feeding the echo.
struct EchoSource {
    double p_e = 0.0; // |p_e| <= 1 for physical inputs
    double w_e = 0.0; // in [-1, 1]
};

// Signal-pulse attenuation theta_s(z) = 2 atan(tan(theta0/2) e^{-alpha0 z/2}).
// theta0 within 1e-9 of pi is rejected (tangent-parameterized bifurcation).
double mccall_hahn_area(double z, double theta0, double alpha0);

// Right-hand side of the photon-echo area equation,
//   d theta_e / dz = sign * (alpha0/2) [2 P cos^2(theta/2) + W sin(theta)],
// sign = +1 forward, -1 backward.
double area_ode_rhs(double theta_e, double p_e, double w_e, double alpha0,
                    int geometry_sign);

// Backward-CRIB echo area in the medium, boundary theta_e(L) = 0:
//   tan(theta_e(z)/2) = Gamma tan(th0/2) (e^{-a z/2} - e^{-a(L - z/2)})
//                       / (1 + tan^2(th0/2) e^{-a L}).
// The z = 0 value is the emitted-echo closed form.
double crib_backward_area(double z, const AreaProtocolConfig& cfg);

// Forward-CRIB echo area:
//   tan(theta_e/2) = Gamma tan(th0/2) a z e^{-a z/2} / (1 + tan^2(th0/2) e^{-a z}).
double crib_forward_area(double z, const AreaProtocolConfig& cfg);

// Control-pulse areas after propagation, beta_i = tan(theta_ci/2):
//   tan(theta1/2) = b1 e^{-a z/2}
//   tan(theta2/2) = b2 (1 + b1^2) e^{a z/2} / (e^{a z} + b1^2).
// Controls within 1e-9 of pi are rejected here (the ROSE entry points below
// instead pass through pi continuously, landing on the analytic limit).
std::pair<double, double> control_pulse_areas(double z, double theta_c1,
                                              double theta_c2, double alpha0);

// Weak-signal ROSE sources at depth z (includes the Gamma theta_s0 factor):
//   P_e = Gamma e^{-a z/2} theta_s0 sin^2(theta1/2) sin^2(theta2/2)
//   W_e = -cos(theta1) cos(theta2).
EchoSource rose_sources(double z, const AreaProtocolConfig& cfg);

struct RoseFormalOptions {
    // The published formal solution repeats the Gamma theta_s0 prefactor that
    // is already inside P_e; default counts it once, which reproduces the
    // two-pulse-echo form in the pi,pi limit. true applies it verbatim twice.
    bool verbatim_prefactor = false;
    double tol = 1e-11;
};

// Formal solution by nested adaptive quadrature:
//   theta(z) = 2 atan{ (alpha0/2) int_0^z P_e(z') e^{(alpha0/2) int_{z'}^z W_e} dz' }.
double rose_formal_solution(double z, const AreaProtocolConfig& cfg,
                            const RoseFormalOptions& opts = {});

// Closed form theta_e(z) = 2 atan{ (Gamma theta_s0 / 2) Phi(z) A(z) } with
//   A = a z + (1 - e^{a z}) / ((1+b1^2)(1 + b1^-2 e^{a z}))
//         + ln[(1 + b1^-2)/(1 + b1^-2 e^{a z})]
//   Phi = e^{a z/2} b2^2 (1+b1^2)^2 (b1^2 + e^{a z})
//         / (b1^2 [b1^4 + M e^{a z} + e^{2 a z}])
//   M = b2^2 (1 + b1^4) + 2 b1^2 (1 + b2^2).
// Throws std::domain_error for theta_c1 = 0 (b1^2 denominator).
double rose_closed_form(double z, const AreaProtocolConfig& cfg);

// (eta_theta, eta_tan) = (|theta_e/theta_s0|^2, |tan(theta_e/2)/tan(th0/2)|^2).
std::pair<double, double> efficiency_measures(double theta_e, double theta_s0);

// eta_theta over a (theta_c x alpha0 z) grid through the closed form,
// theta_c1 = theta_c2 = theta_c. Row-major, theta_c rows.
std::vector<std::vector<double>> rose_gain_map(
    const std::vector<double>& theta_c_grid,
    const std::vector<double>& alpha_z_grid, const AreaProtocolConfig& cfg);

// Closed-form profiles on a uniform z grid (validates branch continuity).
AreaProfile crib_area_profile(const AreaProtocolConfig& cfg, int samples = 129);

} // namespace echomem

#endif
