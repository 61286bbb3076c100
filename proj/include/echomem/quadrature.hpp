#ifndef ECHOMEM_QUADRATURE_HPP
#define ECHOMEM_QUADRATURE_HPP

#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>

namespace echomem::num {

template <typename T>
struct QuadratureResult {
    T value{};
    double error_estimate = 0.0; // accumulated per-panel Richardson deltas
    std::int64_t evaluations = 0;
};

namespace detail {

inline double metric(double v) { return std::fabs(v); }
inline double metric(const std::complex<double>& v) { return std::abs(v); }

template <typename T, typename F>
void simpson_panel(const F& f, double a, double b, T fa, T fb, T fm, T whole,
                   double tol, double floor_tol, int depth,
                   QuadratureResult<T>& out) {
    const double m = 0.5 * (a + b);
    const double h = b - a;
    const T flm = f(0.5 * (a + m));
    const T frm = f(0.5 * (m + b));
    out.evaluations += 2;
    const T left = (h / 12.0) * (fa + 4.0 * flm + fm);
    const T right = (h / 12.0) * (fm + 4.0 * frm + fb);
    const T delta = left + right - whole;
    // floor_tol is the roundoff resolution of the whole integral; demanding
    // less than that only drills panels down to machine width.
    const bool machine_width = h <= 8e-16 * (std::fabs(a) + std::fabs(b)) + 1e-300;
    if (metric(delta) <= std::max(15.0 * tol, floor_tol) || machine_width) {
        out.value += left + right + delta / 15.0; // Richardson extrapolation
        out.error_estimate += metric(delta); // un-extrapolated bound, conservative
        return;
    }
    if (depth <= 0)
        throw std::runtime_error("adaptive_simpson: subdivision limit reached");
    simpson_panel(f, a, m, fa, fm, flm, left, 0.5 * tol, floor_tol, depth - 1, out);
    simpson_panel(f, m, b, fm, fb, frm, right, 0.5 * tol, floor_tol, depth - 1, out);
}

} // namespace detail

// Adaptive Simpson on [a,b] to an absolute tolerance. Works for double and
// complex<double> integrands. Throws std::runtime_error when the subdivision
// limit is reached before convergence.
template <typename F>
auto adaptive_simpson(const F& f, double a, double b, double tol = 1e-10,
                      int max_depth = 60) {
    using T = decltype(f(a));
    QuadratureResult<T> out;
    if (!(std::isfinite(a) && std::isfinite(b)))
        throw std::invalid_argument("adaptive_simpson: non-finite bounds");
    if (a == b) return out;
    if (a > b) {
        out = adaptive_simpson(f, b, a, tol, max_depth);
        out.value = -out.value;
        return out;
    }
    const T fa = f(a);
    const T fb = f(b);
    const T fm = f(0.5 * (a + b));
    out.evaluations = 3;
    const T whole = ((b - a) / 6.0) * (fa + 4.0 * fm + fb);
    const double floor_tol =
        1e-15 * ((b - a) * (detail::metric(fa) + detail::metric(fm) +
                            detail::metric(fb)) +
                 detail::metric(whole));
    detail::simpson_panel(f, a, b, fa, fb, fm, whole, tol, floor_tol, max_depth,
                          out);
    return out;
}

// [a, +inf) via the tanh substitution x = a + atanh(u), u in [0, 1), with the
// endpoint damped at u = 1 - 1e-14 (reaches x - a ~ 16.8). Intended for
// integrands with Gaussian-like decay; use the rational map for 1/x^2 tails.
template <typename F>
auto integrate_to_infinity(const F& f, double a, double tol = 1e-10) {
    auto g = [&](double u) { return f(a + std::atanh(u)) / (1.0 - u * u); };
    return adaptive_simpson(g, 0.0, 1.0 - 1e-14, tol);
}

// [a, +inf) via the rational substitution x = a + u/(1-u); independent route
// used to cross-check the tanh map, and the right choice for slow tails.
template <typename F>
auto integrate_to_infinity_rational(const F& f, double a, double tol = 1e-10) {
    auto g = [&](double u) {
        const double om = 1.0 - u;
        return f(a + u / om) / (om * om);
    };
    return adaptive_simpson(g, 0.0, 1.0 - 1e-9, tol);
}

// (-inf, b] by reflection about b.
template <typename F>
auto integrate_from_minus_infinity(const F& f, double b, double tol = 1e-10) {
    auto g = [&](double x) { return f(2.0 * b - x); };
    return integrate_to_infinity(g, b, tol);
}

} // namespace echomem::num

#endif
