#ifndef ECHOMEM_AFC_HPP
#define ECHOMEM_AFC_HPP

#include <complex>
#include <vector>

#include "echomem/line.hpp"

namespace echomem {

// Comb geometry plus its host line. Spectral work depends on the finesse,
// window and depth only; the tooth spacing feeds rephasing-time bookkeeping
// (echo at multiples of 2*pi/delta_afc).
struct AfcComb {
    double delta_afc = 0.05; // tooth spacing
    double upsilon = 0.005;  // tooth width
    double finesse = 10.0;   // delta_afc / upsilon
    double delta0 = 1.25;    // comb window width
    InhomogeneousLine host;  // Gaussian for dispersion work, Lorentzian for
                             // the forward/backward closed forms
    double depth = 2.0;      // alpha_R(0) L of the bare host line

    void validate() const;
    double rephasing_time() const; // 2*pi / delta_afc
    double dephasing() const;      // Gamma_afc of this finesse
};

// Comb dephasing factor Gamma_afc = exp(-7 / (2 f^2)); intensity dephasing
// exp(-7/f^2), so f > 20 gives Gamma ~ 1.
double afc_dephasing(double finesse);

// Forward AFC (Lorentzian host), effective depth a = alpha_R(omega) Z / f:
//   T = Gamma_afc * a * exp(-a (1 + i w) / 2),  w = omega/delta_in.
// Reproduces the signal shape (not input-conjugating). alpha_r0_z is the
// bare-host resonant depth alpha_R(0) Z.
std::complex<double> afc_forward_transfer(const AfcComb& comb, double omega,
                                          double alpha_r0_z);

// Backward AFC (Lorentzian host), full response at the comb's depth:
//   T = Gamma_afc * (1 + i w)^-1 * (1 - exp(-D_local (1 + i w))),
// with D_local = (depth/f) / (1 + w^2).
std::complex<double> afc_backward_transfer(const AfcComb& comb, double omega);

// Same response with the local effective depth alpha_{R,afc} L supplied
// directly (the deep/shallow-limit parameterization).
std::complex<double> afc_backward_transfer_depth(double gamma_afc, double w,
                                                 double alpha_l_afc);

// Dimensionless comb susceptibility for a Gaussian host (zeta = 4 ln 2):
//   chi0'  =  (1/f) (2/sqrt(pi)) dawson(sqrt(zeta) w)
//   chi0'' = -(1/f) exp(-zeta w^2)
// normalized so the bare line (f = 1, delta0 -> inf) has -chi''(0) = 1.
std::complex<double> chi_comb(double omega, const AfcComb& comb);

// Real dispersion of the two out-of-window wings (Gaussian host), adaptive
// quadrature of (1-1/f)(1/pi) exp(-zeta x^2)/(w - x) over each wing.
// Requires |omega| < delta0/2 (inside the window); throws otherwise.
struct WingPair {
    double chi1 = 0.0; // left wing  (-inf, -delta0/2]
    double chi2 = 0.0; // right wing [delta0/2, inf)
};
WingPair chi_wings(double omega, const AfcComb& comb, double tol = 1e-10);

struct DispersionDecomposition {
    std::complex<double> chi0;
    double chi1 = 0.0;
    double chi2 = 0.0;
    static constexpr double zeta = 2.772588722239781; // 4 ln 2
    std::complex<double> total() const { return chi0 + chi1 + chi2; }
};
DispersionDecomposition chi_decomposition(double omega, const AfcComb& comb);

// chi = chi0 + chi1' + chi2'.
std::complex<double> chi_total(double omega, const AfcComb& comb);

// Backward-AFC response with full in-window dispersion, d = depth:
//   D(w) = (1 - exp(-i d chi(w))) / (1 - i chi'(w)/chi''(w))
// returned as Gamma_afc * D. Throws std::domain_error at chi'' = 0.
std::complex<double> afc_dispersion_transfer(double omega, const AfcComb& comb);

struct Range {
    double lo = 0.0;
    double hi = 0.0;
    int count = 1;

    double at(int i) const;
    void validate() const;
};

struct AfcDesignReport {
    double finesse = 0.0;
    double delta0 = 0.0;
    double depth = 0.0;
    // Efficiencies are the dispersion-design figure |D|^2; multiply by
    // gamma_afc^2 for the physical response including comb dephasing.
    double worst_eta = 0.0; // min |D|^2 over |omega| <= bandwidth/2
    double mean_eta = 0.0;
    double gamma_afc = 0.0;
    double plateau_lo = 0.0; // contiguous interval around 0 with eta >= threshold
    double plateau_hi = 0.0;
    bool feasible = false;   // worst_eta >= threshold
    AfcComb comb(double delta_in = 1.0) const;
};

// Maximizes the worst-case efficiency over the operating band by coarse grid
// search plus local refinement. Deterministic: evaluation order never affects
// the result (ties break toward smaller delta0, then finesse, then depth).
AfcDesignReport afc_design_search(double target_bandwidth, Range finesse_range,
                                  Range delta0_range, Range depth_range,
                                  double threshold = 0.90,
                                  int band_samples = 41);

} // namespace echomem

#endif
