#ifndef ECHOMEM_OPTIMIZE_HPP
#define ECHOMEM_OPTIMIZE_HPP

#include <cmath>
#include <stdexcept>
#include <utility>

namespace echomem::num {

struct Maximum {
    double x = 0.0;
    double f = 0.0;
};

// Golden-section maximizer on [a,b]. Assumes the function is unimodal on the
// bracket (documented contract); throws std::runtime_error when the located
// maximum sits on the bracket boundary, i.e. no interior maximum.
template <typename F>
Maximum maximize_1d(const F& f, double a, double b, double xtol = 1e-10) {
    if (!(b > a)) throw std::invalid_argument("maximize_1d: empty bracket");
    const double invphi = 0.5 * (std::sqrt(5.0) - 1.0);
    double x1 = b - invphi * (b - a);
    double x2 = a + invphi * (b - a);
    double f1 = f(x1);
    double f2 = f(x2);
    double lo = a, hi = b;
    for (int it = 0; it < 400 && (hi - lo) > xtol; ++it) {
        if (f1 < f2) {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + invphi * (hi - lo);
            f2 = f(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - invphi * (hi - lo);
            f1 = f(x1);
        }
    }
    Maximum m;
    m.x = 0.5 * (lo + hi);
    m.f = f(m.x);
    const double edge = 4.0 * std::max(xtol, 1e-14 * (b - a));
    if (m.x - a < edge || b - m.x < edge)
        throw std::runtime_error(
            "maximize_1d: no interior maximum in the bracket");
    return m;
}

} // namespace echomem::num

#endif
