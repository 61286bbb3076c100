#ifndef ECHOMEM_LINE_HPP
#define ECHOMEM_LINE_HPP

#include <complex>
#include <vector>

namespace echomem {

// All frequencies are expressed in units of the inhomogeneous width
// (delta_in = 1 is the natural choice); depths enter as the dimensionless
// alpha_R(0)*L. Every function here is pure and reentrant.

enum class LineShape { Lorentzian, Gaussian };

// Inhomogeneous line G(delta/delta_in): Lorentzian with HWHM delta_in, or
// Gaussian with FWHM delta_in (zeta = 4 ln 2). t2 <= 0 means T2 -> infinity.
struct InhomogeneousLine {
    LineShape shape = LineShape::Lorentzian;
    double delta_in = 1.0;
    double t2 = 0.0; // phase-relaxation time; <= 0 encodes infinity

    void validate() const;
    double gamma_h() const; // 1/T2, with the documented regularization floor
    // Normalized line profile G(delta/delta_in), unit integral over delta.
    double profile(double delta) const;
};

// Propagation constants; beta is the absorption scale of alpha = beta*chi,
// v_g only feeds trivial delay bookkeeping.
struct Medium {
    double beta = 1.0;
    double length = 1.0;
    double v_g = 1.0;

    void validate() const;
    // Resonant optical depth alpha_R(0) * length.
    double resonant_depth(const InhomogeneousLine& line) const;
};

// Ensemble dephasing factor at the echo emission time, Gamma in [0,1].
// The functional form is not pinned down; exp(-t_e/T2) is a convenience.
struct DephasingFactor {
    double gamma_e = 1.0;

    DephasingFactor() = default;
    explicit DephasingFactor(double value);
    static DephasingFactor from_exponential(double t_e, double t2);
};

// Complex susceptibility of the inhomogeneous line:
//   chi(omega) = integral G(d/delta_in) / (1/T2 + i(d - omega)) d d.
// Lorentzian uses the closed form 1/(delta_in + 1/T2 - i*omega); Gaussian is
// evaluated by adaptive quadrature with the 1/T2 regularization.
std::complex<double> chi(const InhomogeneousLine& line, double omega);

// Generic quadrature route for any profile; exposed so the closed forms can
// be cross-checked against it (it never calls them).
std::complex<double> chi_quadrature(const InhomogeneousLine& line, double omega,
                                    double tol = 1e-10);

// alpha(omega) = beta * chi(omega).
std::complex<double> absorption_coefficient(const Medium& medium,
                                            const InhomogeneousLine& line,
                                            double omega);

// Resonant absorption alpha_R(omega) = pi * beta * G(omega/delta_in);
// even and nonnegative for the symmetric lines used here.
double resonant_absorption(const Medium& medium, const InhomogeneousLine& line,
                           double omega);

// Snapshot of the stored coherence after absorption (tau-independent phase
// excluded): sigma(delta, z) = i * spectrum(delta) * exp(-alpha(delta) * z).
std::vector<std::vector<std::complex<double>>> coherence_map(
    const std::vector<std::complex<double>>& signal_spectrum,
    const std::vector<double>& omega_grid, const std::vector<double>& z_grid,
    const Medium& medium, const InhomogeneousLine& line);

} // namespace echomem

#endif
