#include "echomem/afc.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "echomem/quadrature.hpp"
#include "echomem/special.hpp"

namespace echomem {

namespace {
constexpr double kZeta = DispersionDecomposition::zeta;
constexpr std::complex<double> kI(0.0, 1.0);
} // namespace

void AfcComb::validate() const {
    host.validate();
    if (!(finesse > 1.0)) throw std::invalid_argument("AfcComb: finesse must be > 1");
    if (!(delta0 > 0.0)) throw std::invalid_argument("AfcComb: delta0 must be > 0");
    if (!(depth >= 0.0)) throw std::invalid_argument("AfcComb: depth must be >= 0");
    if (!(delta_afc > 0.0 && upsilon > 0.0))
        throw std::invalid_argument("AfcComb: tooth geometry must be positive");
    if (std::fabs(finesse - delta_afc / upsilon) > 1e-12 * finesse)
        throw std::invalid_argument("AfcComb: finesse != delta_afc/upsilon");
}

double AfcComb::rephasing_time() const { return 2.0 * M_PI / delta_afc; }

double AfcComb::dephasing() const { return afc_dephasing(finesse); }

double afc_dephasing(double finesse) {
    if (!(finesse > 0.0))
        throw std::invalid_argument("afc_dephasing: finesse must be > 0");
    return std::exp(-7.0 / (2.0 * finesse * finesse));
}

std::complex<double> afc_forward_transfer(const AfcComb& comb, double omega,
                                          double alpha_r0_z) {
    comb.validate();
    if (comb.host.shape != LineShape::Lorentzian)
        throw std::invalid_argument("afc_forward_transfer: Lorentzian host only");
    if (!(alpha_r0_z >= 0.0))
        throw std::invalid_argument("afc_forward_transfer: depth must be >= 0");
    const double w = omega / comb.host.delta_in;
    const double a = alpha_r0_z / comb.finesse / (1.0 + w * w);
    return comb.dephasing() * a * std::exp(-0.5 * a * (1.0 + kI * w));
}

std::complex<double> afc_backward_transfer_depth(double gamma_afc, double w,
                                                 double alpha_l_afc) {
    if (!(alpha_l_afc >= 0.0))
        throw std::invalid_argument("afc_backward_transfer: depth must be >= 0");
    const std::complex<double> disp = 1.0 + kI * w;
    return gamma_afc / disp * (1.0 - std::exp(-alpha_l_afc * disp));
}

std::complex<double> afc_backward_transfer(const AfcComb& comb, double omega) {
    comb.validate();
    if (comb.host.shape != LineShape::Lorentzian)
        throw std::invalid_argument("afc_backward_transfer: Lorentzian host only");
    const double w = omega / comb.host.delta_in;
    const double d_local = comb.depth / comb.finesse / (1.0 + w * w);
    return afc_backward_transfer_depth(comb.dephasing(), w, d_local);
}

std::complex<double> chi_comb(double omega, const AfcComb& comb) {
    comb.validate();
    if (comb.host.shape != LineShape::Gaussian)
        throw std::invalid_argument("chi_comb: Gaussian host only");
    const double w = omega / comb.host.delta_in;
    const double g = std::exp(-kZeta * w * w);
    // exp(-x^2) Erfi(x) = (2/sqrt(pi)) dawson(x), and Erfi is odd
    const double re = num::scaled_erfi(std::sqrt(kZeta) * w) / comb.finesse;
    const double im = -g / comb.finesse;
    return {re, im};
}

WingPair chi_wings(double omega, const AfcComb& comb, double tol) {
    comb.validate();
    if (comb.host.shape != LineShape::Gaussian)
        throw std::invalid_argument("chi_wings: Gaussian host only");
    const double w = omega / comb.host.delta_in;
    const double edge = 0.5 * comb.delta0 / comb.host.delta_in;
    if (!(std::fabs(w) < edge))
        throw std::domain_error("chi_wings: omega outside the comb window");
    const double scale = (1.0 - 1.0 / comb.finesse) / M_PI;
    auto right = [&](double x) { return std::exp(-kZeta * x * x) / (w - x); };
    auto left = [&](double x) { return std::exp(-kZeta * x * x) / (w - x); };
    WingPair p;
    p.chi2 = scale * num::integrate_to_infinity(right, edge, tol).value;
    p.chi1 = scale * num::integrate_from_minus_infinity(left, -edge, tol).value;
    return p;
}

DispersionDecomposition chi_decomposition(double omega, const AfcComb& comb) {
    DispersionDecomposition d;
    d.chi0 = chi_comb(omega, comb);
    const WingPair p = chi_wings(omega, comb);
    d.chi1 = p.chi1;
    d.chi2 = p.chi2;
    return d;
}

std::complex<double> chi_total(double omega, const AfcComb& comb) {
    return chi_decomposition(omega, comb).total();
}

std::complex<double> afc_dispersion_transfer(double omega, const AfcComb& comb) {
    const std::complex<double> chi = chi_total(omega, comb);
    if (chi.imag() == 0.0)
        throw std::domain_error("afc_dispersion_transfer: chi'' = 0");
    const std::complex<double> numer = 1.0 - std::exp(-kI * comb.depth * chi);
    const std::complex<double> denom = 1.0 - kI * chi.real() / chi.imag();
    return comb.dephasing() * numer / denom;
}

double Range::at(int i) const {
    if (count <= 1) return lo;
    return lo + (hi - lo) * static_cast<double>(i) / (count - 1);
}

void Range::validate() const {
    if (count < 1 || !(hi >= lo))
        throw std::invalid_argument("Range: need count >= 1 and hi >= lo");
}

AfcComb AfcDesignReport::comb(double delta_in) const {
    AfcComb c;
    c.finesse = finesse;
    c.delta0 = delta0;
    c.depth = depth;
    c.delta_afc = delta0 / 20.0; // 20 teeth; spacing only sets t_e bookkeeping
    c.upsilon = c.delta_afc / finesse;
    c.host = InhomogeneousLine{LineShape::Gaussian, delta_in, 0.0};
    return c;
}

namespace {

// Raw wing dispersion (finesse scale factored out), cached per delta0 row.
double raw_wing_sum(double w, double edge, double tol = 1e-10) {
    auto f = [&](double x) { return std::exp(-kZeta * x * x) / (w - x); };
    const double r = num::integrate_to_infinity(f, edge, tol).value;
    const double l = num::integrate_from_minus_infinity(f, -edge, tol).value;
    return (l + r) / M_PI;
}

// Dispersion-design efficiency |D|^2; the comb dephasing Gamma_afc^2 is an
// f-only factor reported separately in the design output.
double design_eta(double finesse, double depth, double w, double raw_wings) {
    const double g = std::exp(-kZeta * w * w);
    const std::complex<double> chi(
        num::scaled_erfi(std::sqrt(kZeta) * w) / finesse +
            (1.0 - 1.0 / finesse) * raw_wings,
        -g / finesse);
    const std::complex<double> numer = 1.0 - std::exp(-kI * depth * chi);
    const std::complex<double> denom = 1.0 - kI * chi.real() / chi.imag();
    return std::norm(numer / denom);
}

struct Candidate {
    double f = 0.0, d0 = 0.0, d = 0.0;
    double worst = -1.0, mean = 0.0;
};

bool better(const Candidate& a, const Candidate& b) {
    if (a.worst != b.worst) return a.worst > b.worst;
    if (a.d0 != b.d0) return a.d0 < b.d0;
    if (a.f != b.f) return a.f < b.f;
    return a.d < b.d;
}

Candidate evaluate_grid(double band, const Range& fr, const Range& d0r,
                        const Range& dr, int band_samples) {
    std::vector<double> wgrid(band_samples);
    for (int i = 0; i < band_samples; ++i)
        wgrid[i] = band_samples == 1
                       ? 0.0
                       : -0.5 * band + band * i / (band_samples - 1);
    Candidate best;
    for (int i0 = 0; i0 < d0r.count; ++i0) {
        const double d0 = d0r.at(i0);
        if (d0 <= band) continue; // window must cover the operating band
        std::vector<double> wings(wgrid.size());
        for (std::size_t k = 0; k < wgrid.size(); ++k)
            wings[k] = raw_wing_sum(wgrid[k], 0.5 * d0);
        for (int i1 = 0; i1 < fr.count; ++i1) {
            const double f = fr.at(i1);
            for (int i2 = 0; i2 < dr.count; ++i2) {
                const double d = dr.at(i2);
                Candidate c{f, d0, d, 1e300, 0.0};
                for (std::size_t k = 0; k < wgrid.size(); ++k) {
                    const double eta = design_eta(f, d, wgrid[k], wings[k]);
                    c.worst = std::min(c.worst, eta);
                    c.mean += eta;
                }
                c.mean /= static_cast<double>(wgrid.size());
                if (better(c, best)) best = c;
            }
        }
    }
    return best;
}

Range shrink_around(const Range& r, double x, double factor) {
    if (r.count <= 1) return r;
    const double half = 0.5 * (r.hi - r.lo) / factor;
    Range out;
    out.lo = std::max(r.lo, x - half);
    out.hi = std::min(r.hi, x + half);
    out.count = r.count;
    return out;
}

} // namespace

AfcDesignReport afc_design_search(double target_bandwidth, Range finesse_range,
                                  Range delta0_range, Range depth_range,
                                  double threshold, int band_samples) {
    finesse_range.validate();
    delta0_range.validate();
    depth_range.validate();
    if (!(target_bandwidth > 0.0) || band_samples < 1)
        throw std::invalid_argument("afc_design_search: invalid band");

    Candidate best = evaluate_grid(target_bandwidth, finesse_range,
                                   delta0_range, depth_range, band_samples);
    Range fr = finesse_range, d0r = delta0_range, dr = depth_range;
    for (int pass = 0; pass < 3 && best.worst >= 0.0; ++pass) {
        fr = shrink_around(fr, best.f, 3.0);
        d0r = shrink_around(d0r, best.d0, 3.0);
        dr = shrink_around(dr, best.d, 3.0);
        const Candidate refined =
            evaluate_grid(target_bandwidth, fr, d0r, dr, band_samples);
        if (better(refined, best)) best = refined;
    }

    AfcDesignReport rep;
    if (best.worst < 0.0) {
        rep.feasible = false; // no window wide enough for the band
        return rep;
    }
    rep.finesse = best.f;
    rep.delta0 = best.d0;
    rep.depth = best.d;
    rep.worst_eta = best.worst;
    rep.mean_eta = best.mean;
    rep.gamma_afc = afc_dephasing(best.f);
    rep.feasible = best.worst >= threshold;

    // Plateau: widest contiguous interval around omega = 0 with eta >= threshold,
    // scanned inside the window.
    const int m = 201;
    const double lim = 0.49 * best.d0;
    std::vector<double> wing_cache(m);
    rep.plateau_lo = rep.plateau_hi = 0.0;
    std::vector<double> eta(m);
    for (int i = 0; i < m; ++i) {
        const double w = -lim + 2.0 * lim * i / (m - 1);
        eta[i] = design_eta(best.f, best.d, w, raw_wing_sum(w, 0.5 * best.d0));
    }
    const int mid = m / 2;
    int lo = mid, hi = mid;
    if (eta[mid] >= threshold) {
        while (lo > 0 && eta[lo - 1] >= threshold) --lo;
        while (hi + 1 < m && eta[hi + 1] >= threshold) ++hi;
        rep.plateau_lo = -lim + 2.0 * lim * lo / (m - 1);
        rep.plateau_hi = -lim + 2.0 * lim * hi / (m - 1);
    }
    return rep;
}

} // namespace echomem
