#include "echomem/line.hpp"

#include <cmath>
#include <stdexcept>

#include "echomem/quadrature.hpp"

namespace echomem {

namespace {
constexpr double kZeta = 2.772588722239781; // 4 ln 2
constexpr double kGammaFloor = 1e-6;        // regularization when T2 infinite
} // namespace

void InhomogeneousLine::validate() const {
    if (!(delta_in > 0.0))
        throw std::invalid_argument("InhomogeneousLine: delta_in must be > 0");
    if (t2 != 0.0 && !(t2 > 0.0))
        throw std::invalid_argument("InhomogeneousLine: finite t2 must be > 0");
}

double InhomogeneousLine::gamma_h() const {
    return t2 > 0.0 ? 1.0 / t2 : kGammaFloor * delta_in;
}

double InhomogeneousLine::profile(double delta) const {
    const double x = delta / delta_in;
    if (shape == LineShape::Lorentzian)
        return 1.0 / (M_PI * delta_in * (1.0 + x * x));
    return std::sqrt(kZeta / M_PI) / delta_in * std::exp(-kZeta * x * x);
}

void Medium::validate() const {
    if (!(beta >= 0.0)) throw std::invalid_argument("Medium: beta must be >= 0");
    if (!(length > 0.0)) throw std::invalid_argument("Medium: length must be > 0");
}

double Medium::resonant_depth(const InhomogeneousLine& line) const {
    return resonant_absorption(*this, line, 0.0) * length;
}

DephasingFactor::DephasingFactor(double value) : gamma_e(value) {
    if (!(value >= 0.0 && value <= 1.0))
        throw std::invalid_argument("DephasingFactor: value must be in [0,1]");
}

DephasingFactor DephasingFactor::from_exponential(double t_e, double t2) {
    if (!(t_e >= 0.0) || !(t2 > 0.0))
        throw std::invalid_argument("DephasingFactor: need t_e >= 0, t2 > 0");
    return DephasingFactor(std::exp(-t_e / t2));
}

std::complex<double> chi(const InhomogeneousLine& line, double omega) {
    line.validate();
    if (!std::isfinite(omega))
        throw std::invalid_argument("chi: non-finite omega");
    if (line.shape == LineShape::Lorentzian) {
        // Lorentzian convolved with the homogeneous width stays Lorentzian.
        const double g = line.t2 > 0.0 ? 1.0 / line.t2 : 0.0;
        return 1.0 / std::complex<double>(line.delta_in + g, -omega);
    }
    return chi_quadrature(line, omega);
}

std::complex<double> chi_quadrature(const InhomogeneousLine& line, double omega,
                                    double tol) {
    line.validate();
    if (!std::isfinite(omega))
        throw std::invalid_argument("chi_quadrature: non-finite omega");
    const double g = line.gamma_h();

    // Re chi = integral G(d) * g / (g^2 + (d-omega)^2) dd; the kernel is a
    // width-g Lorentzian spike, flattened by d = omega + g*tan(phi).
    auto re_integrand = [&](double phi) {
        return line.profile(omega + g * std::tan(phi));
    };
    const double re =
        num::adaptive_simpson(re_integrand, -0.5 * M_PI + 1e-12,
                              0.5 * M_PI - 1e-12, tol)
            .value;

    // Im chi = -integral G(d) (d-omega) / (g^2 + (d-omega)^2) dd. Folding
    // u -> -u removes the odd near-principal-value part exactly, leaving a
    // smooth integrand; u = delta_in * tan(theta) covers the full line.
    auto im_integrand = [&](double theta) {
        const double t = std::tan(theta);
        const double u = line.delta_in * t;
        const double jac = line.delta_in * (1.0 + t * t);
        const double diff = line.profile(omega + u) - line.profile(omega - u);
        return diff * u / (g * g + u * u) * jac;
    };
    const double im =
        -num::adaptive_simpson(im_integrand, 1e-14, 0.5 * M_PI - 1e-12, tol)
             .value;
    return {re, im};
}

std::complex<double> absorption_coefficient(const Medium& medium,
                                            const InhomogeneousLine& line,
                                            double omega) {
    medium.validate();
    return medium.beta * chi(line, omega);
}

double resonant_absorption(const Medium& medium, const InhomogeneousLine& line,
                           double omega) {
    medium.validate();
    line.validate();
    if (!std::isfinite(omega))
        throw std::invalid_argument("resonant_absorption: non-finite omega");
    return M_PI * medium.beta * line.profile(omega);
}

std::vector<std::vector<std::complex<double>>> coherence_map(
    const std::vector<std::complex<double>>& signal_spectrum,
    const std::vector<double>& omega_grid, const std::vector<double>& z_grid,
    const Medium& medium, const InhomogeneousLine& line) {
    if (signal_spectrum.size() != omega_grid.size())
        throw std::invalid_argument("coherence_map: spectrum/grid size mismatch");
    const std::complex<double> i_unit(0.0, 1.0);
    std::vector<std::vector<std::complex<double>>> sigma(
        z_grid.size(), std::vector<std::complex<double>>(omega_grid.size()));
    for (std::size_t iz = 0; iz < z_grid.size(); ++iz) {
        for (std::size_t iw = 0; iw < omega_grid.size(); ++iw) {
            const auto alpha =
                absorption_coefficient(medium, line, omega_grid[iw]);
            sigma[iz][iw] =
                i_unit * signal_spectrum[iw] * std::exp(-alpha * z_grid[iz]);
        }
    }
    return sigma;
}

} // namespace echomem
