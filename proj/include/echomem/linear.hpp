#ifndef ECHOMEM_LINEAR_HPP
#define ECHOMEM_LINEAR_HPP

#include <complex>
#include <vector>

#include "echomem/line.hpp"
#include "echomem/pulse.hpp"

namespace echomem {

// Sampled spectral response mapping the input spectrum to the echo spectrum.
// conjugate_input = true means the response multiplies spectrum(-omega)
// (time-reversing protocols, CRIB/GEM); false means spectrum(+omega) (AFC).
struct TransferFunction {
    std::vector<double> omega_grid; // uniform, strictly increasing
    num::cvector values;
    bool conjugate_input = false;

    void validate() const;
};

// Backward CRIB: Gamma * (1 - exp(-alpha_R(omega) L)); real, dispersion-free.
std::complex<double> crib_backward_transfer(const Medium& medium,
                                            const InhomogeneousLine& line,
                                            double gamma_e, double omega);

// Same response parameterized directly by the resonant depth alpha_R(0)L of
// a Lorentzian line (units of delta_in).
double crib_backward_transfer_depth(double alphaL, double gamma_e, double omega);

// Forward CRIB, Lorentzian specialization: with a_w = alpha_z / (1 + w^2),
//   T = Gamma * a_w * sinc(w a_w / 2) * exp(-a_w / 2),  w = omega/delta_in.
// alpha_z is the resonant depth alpha_R(0) * Z. The omega -> 0 limit is the
// analytic a_w exp(-a_w/2); no division by omega ever happens.
double crib_forward_transfer(double alpha_z, double gamma_e, double omega,
                             double delta_in = 1.0);

// General-line forward response (quadrature route through chi); used to
// cross-check the Lorentzian closed form away from omega = 0.
std::complex<double> crib_forward_transfer_general(const Medium& medium,
                                                   const InhomogeneousLine& line,
                                                   double gamma_e, double omega,
                                                   double z);

// eta(omega, Z) = |T|^2 with Gamma = 1 over the grid (row-major, depth rows).
std::vector<std::vector<double>> crib_forward_efficiency_map(
    const std::vector<double>& alpha_l_grid,
    const std::vector<double>& omega_grid, double delta_in = 1.0);

struct OptimalDepth {
    double alpha_l = 0.0; // depth alpha_R(0)L at the maximum
    double eta = 0.0;
    double stationarity = 0.0; // central finite-difference d eta / dZ at x*
};

// Numerically maximizes the forward-CRIB spectral efficiency over depth at
// fixed omega (|omega| < 5 delta_in). The closed-form optimum quoted in the
// literature is intentionally not asserted; this is the ground truth here.
OptimalDepth crib_forward_optimal_depth(double omega, double delta_in = 1.0,
                                        double gamma_e = 1.0);

// Narrowband limit: Gamma * alpha_R(omega)Z * exp(-alpha_R(omega)Z/2);
// valid when (w/2) alpha_R(omega) Z << pi/2 (not enforced).
double crib_narrowband_transfer(double omega, double alpha_z, double gamma_e,
                                const InhomogeneousLine& line);

// GEM amplitude response; identical for forward and backward geometry.
double gem_transfer(double kappa_eff, double gamma_e);

struct GemConfig {
    double kappa_eff = 1.0; // effective optical depth 2 beta / chi
    double chi_grad = 1.0;  // gradient (frequency / length)
    double t1 = 0.0;        // wait before the gradient flip
    double t_e = 0.0;       // echo emission time
    double length = 1.0;    // cell length, only for t_m = kappa/(chi L)

    void validate() const;
    double t_m() const { return kappa_eff / (chi_grad * length); }
};

// Nonlinear phase of the forward-GEM echo:
//   phi_n(t) = kappa_eff * ln(1 + (t - t_e)/(t1 + t_m)),   phi_n(t_e) = 0.
// Throws std::domain_error when the log argument is not positive.
double gem_forward_phase(double t, const GemConfig& cfg);

struct EchoResult {
    Pulse echo;
    double edge_energy_fraction = 0.0; // spectral energy in the outer bins
    bool aliasing_warning = false;     // fraction above 1e-3
};

// Spectral multiply + inverse transform. The transfer must be sampled on the
// pulse's own frequency grid (same n and spacing); mismatch throws. With
// conjugate_input the input spectrum is index-flipped first, so an identity
// response yields the exact time reverse.
EchoResult apply_transfer(const Pulse& input, const TransferFunction& tf);

// Builds the frequency grid of a pulse, for constructing matching transfers.
std::vector<double> frequency_grid(const num::TransformConvention& grid);

// AFC group delay: -alphaL_afc / (2 delta_in), always <= 0.
double afc_group_delay(double alpha_l_afc, double delta_in);

} // namespace echomem

#endif
