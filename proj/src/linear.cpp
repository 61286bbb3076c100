#include "echomem/linear.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "echomem/optimize.hpp"

namespace echomem {

namespace {

double sinc(double x) {
    if (std::fabs(x) < 1e-4) {
        const double x2 = x * x;
        return 1.0 - x2 / 6.0 + x2 * x2 / 120.0;
    }
    return std::sin(x) / x;
}

void check_gamma(double g) {
    if (!(g >= 0.0 && g <= 1.0))
        throw std::invalid_argument("gamma_e must be in [0,1]");
}

} // namespace

void TransferFunction::validate() const {
    if (omega_grid.size() != values.size() || omega_grid.size() < 2)
        throw std::invalid_argument("TransferFunction: grid/value size mismatch");
    const double d0 = omega_grid[1] - omega_grid[0];
    if (!(d0 > 0.0))
        throw std::invalid_argument("TransferFunction: grid not increasing");
    for (std::size_t i = 1; i < omega_grid.size(); ++i) {
        const double d = omega_grid[i] - omega_grid[i - 1];
        if (std::fabs(d - d0) > 1e-9 * d0)
            throw std::invalid_argument("TransferFunction: grid not uniform");
        if (!std::isfinite(std::abs(values[i])))
            throw std::invalid_argument("TransferFunction: non-finite value");
    }
}

std::complex<double> crib_backward_transfer(const Medium& medium,
                                            const InhomogeneousLine& line,
                                            double gamma_e, double omega) {
    check_gamma(gamma_e);
    const double arl = resonant_absorption(medium, line, omega) * medium.length;
    return gamma_e * (-std::expm1(-arl));
}

double crib_backward_transfer_depth(double alphaL, double gamma_e, double omega) {
    check_gamma(gamma_e);
    if (!(alphaL >= 0.0))
        throw std::invalid_argument("crib_backward_transfer: depth must be >= 0");
    const double w = omega;
    return gamma_e * (-std::expm1(-alphaL / (1.0 + w * w)));
}

double crib_forward_transfer(double alpha_z, double gamma_e, double omega,
                             double delta_in) {
    check_gamma(gamma_e);
    if (!(alpha_z >= 0.0))
        throw std::invalid_argument("crib_forward_transfer: depth must be >= 0");
    const double w = omega / delta_in;
    const double a_w = alpha_z / (1.0 + w * w);
    return gamma_e * a_w * sinc(0.5 * w * a_w) * std::exp(-0.5 * a_w);
}

std::complex<double> crib_forward_transfer_general(const Medium& medium,
                                                   const InhomogeneousLine& line,
                                                   double gamma_e, double omega,
                                                   double z) {
    check_gamma(gamma_e);
    if (omega == 0.0)
        throw std::domain_error(
            "crib_forward_transfer_general: omega = 0 requires the closed-form "
            "limit; use crib_forward_transfer");
    const auto chi_p = chi_quadrature(line, omega);
    const auto chi_m = chi_quadrature(line, -omega);
    const auto alpha_p = medium.beta * chi_p;
    const auto alpha_m = medium.beta * chi_m;
    const double g = 2.0 * M_PI * line.profile(-omega);
    return gamma_e * g / (chi_p - chi_m) *
           (std::exp(-alpha_m * z / 2.0) - std::exp(-alpha_p * z / 2.0));
}

std::vector<std::vector<double>> crib_forward_efficiency_map(
    const std::vector<double>& alpha_l_grid,
    const std::vector<double>& omega_grid, double delta_in) {
    std::vector<std::vector<double>> eta(alpha_l_grid.size());
    for (std::size_t i = 0; i < alpha_l_grid.size(); ++i) {
        eta[i].resize(omega_grid.size());
        for (std::size_t j = 0; j < omega_grid.size(); ++j) {
            const double t =
                crib_forward_transfer(alpha_l_grid[i], 1.0, omega_grid[j], delta_in);
            eta[i][j] = t * t;
        }
    }
    return eta;
}

OptimalDepth crib_forward_optimal_depth(double omega, double delta_in,
                                        double gamma_e) {
    const double w = std::fabs(omega) / delta_in;
    if (!(w < 5.0))
        throw std::invalid_argument(
            "crib_forward_optimal_depth: |omega| must be < 5 delta_in");
    auto eta = [&](double alpha_l) {
        const double t = crib_forward_transfer(alpha_l, gamma_e, omega, delta_in);
        return t * t;
    };
    // eta is unimodal in depth up to the first zero of the sine factor,
    // a_w = 2 pi / w, i.e. alpha_l = (1+w^2) * 2 pi / w.
    const double hi = w > 1e-6 ? std::min(60.0, 0.999 * (1.0 + w * w) * 2.0 * M_PI / w)
                               : 60.0;
    num::Maximum m;
    try {
        m = num::maximize_1d(eta, 1e-9, hi, 1e-11);
    } catch (const std::runtime_error& e) {
        throw std::runtime_error(std::string("crib_forward_optimal_depth: ") +
                                 e.what());
    }
    OptimalDepth out;
    out.alpha_l = m.x;
    out.eta = m.f;
    const double h = 1e-5;
    out.stationarity = (eta(m.x + h) - eta(m.x - h)) / (2.0 * h);
    return out;
}

double crib_narrowband_transfer(double omega, double alpha_z, double gamma_e,
                                const InhomogeneousLine& line) {
    check_gamma(gamma_e);
    if (!(alpha_z >= 0.0))
        throw std::invalid_argument("crib_narrowband_transfer: depth >= 0");
    line.validate();
    const double a_w = alpha_z * line.profile(omega) / line.profile(0.0);
    return gamma_e * a_w * std::exp(-0.5 * a_w);
}

double gem_transfer(double kappa_eff, double gamma_e) {
    check_gamma(gamma_e);
    if (!(kappa_eff >= 0.0))
        throw std::invalid_argument("gem_transfer: kappa_eff must be >= 0");
    return gamma_e * (-std::expm1(-kappa_eff));
}

void GemConfig::validate() const {
    if (!(kappa_eff >= 0.0))
        throw std::invalid_argument("GemConfig: kappa_eff must be >= 0");
    if (!(t1 >= 0.0)) throw std::invalid_argument("GemConfig: t1 must be >= 0");
    if (!(chi_grad > 0.0) || !(length > 0.0))
        throw std::invalid_argument("GemConfig: chi_grad and length must be > 0");
}

double gem_forward_phase(double t, const GemConfig& cfg) {
    cfg.validate();
    const double x = (t - cfg.t_e) / (cfg.t1 + cfg.t_m());
    if (!(x > -1.0))
        throw std::domain_error("gem_forward_phase: t - t_e <= -(t1 + t_m)");
    return cfg.kappa_eff * std::log1p(x);
}

std::vector<double> frequency_grid(const num::TransformConvention& grid) {
    std::vector<double> w(grid.n);
    for (int j = 0; j < grid.n; ++j) w[j] = grid.omega(j);
    return w;
}

EchoResult apply_transfer(const Pulse& input, const TransferFunction& tf) {
    tf.validate();
    const auto wg = frequency_grid(input.grid);
    if (wg.size() != tf.omega_grid.size())
        throw std::invalid_argument("apply_transfer: grid size mismatch");
    const double dw = wg[1] - wg[0];
    if (std::fabs(tf.omega_grid[0] - wg[0]) > 1e-9 * dw ||
        std::fabs(tf.omega_grid[1] - tf.omega_grid[0] - dw) > 1e-9 * dw)
        throw std::invalid_argument("apply_transfer: frequency grid mismatch");

    Spectrum s = spectrum_of(input);
    const int n = s.grid.n;

    double total = 0.0, edge = 0.0;
    const int guard = std::max(1, n / 16);
    for (int j = 0; j < n; ++j) {
        const double q = std::norm(s.values[j]);
        total += q;
        if (j < guard || j >= n - guard) edge += q;
    }

    num::cvector out(n);
    if (tf.conjugate_input) {
        // spectrum(-w_j) is the exact index flip on the symmetric grid
        for (int j = 0; j < n; ++j) out[j] = tf.values[j] * s.values[n - 1 - j];
    } else {
        for (int j = 0; j < n; ++j) out[j] = tf.values[j] * s.values[j];
    }
    Spectrum es{s.grid, std::move(out)};

    EchoResult r;
    r.echo = pulse_from_spectrum(es);
    r.echo.carrier_detuning = input.carrier_detuning;
    r.edge_energy_fraction = total > 0.0 ? edge / total : 0.0;
    r.aliasing_warning = r.edge_energy_fraction > 1e-3;
    return r;
}

double afc_group_delay(double alpha_l_afc, double delta_in) {
    if (!(alpha_l_afc >= 0.0) || !(delta_in > 0.0))
        throw std::invalid_argument("afc_group_delay: invalid arguments");
    return -alpha_l_afc / (2.0 * delta_in);
}

} // namespace echomem
