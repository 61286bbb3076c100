#ifndef ECHOMEM_TRANSFORM_HPP
#define ECHOMEM_TRANSFORM_HPP

#include <complex>
#include <vector>

namespace echomem::num {

// Project-wide discrete transform contract.
//
//   spectrum(w) = (2*pi)^(-1/2) * integral a(t) e^{+i w t} dt
//   a(t)        = (2*pi)^(-1/2) * integral spectrum(w) e^{-i w t} dw
//
// Discrete version, fixed bit-exactly:
//   n       : power of two
//   t_k     = (k - (n-1)/2) * dt,          k = 0..n-1
//   w_j     = (j - (n-1)/2) * dw,          dw = 2*pi/(n*dt)
//   fwd     : s_j = (dt/sqrt(2*pi)) * sum_k a_k e^{+i w_j t_k}
//   inv     : a_k = (dw/sqrt(2*pi)) * sum_j s_j e^{-i w_j t_k}
//
// Both grids are symmetric about zero (half-sample offsets), so time or
// frequency reversal is the exact index flip v[k] -> v[n-1-k].
struct TransformConvention {
    static constexpr int sign = +1;            // forward kernel e^{+iwt}
    static constexpr bool symmetric_norm = true;
    int n = 0;
    double dt = 0.0;
    double domega() const;
    double time(int k) const;
    double omega(int j) const;
};

using cvector = std::vector<std::complex<double>>;

// Forward transform of samples on the centered grid; a.size() must be a
// power of two.
cvector forward_transform(const cvector& a, double dt);

// Inverse transform back to the centered time grid.
cvector inverse_transform(const cvector& s, double dt);

// inverse(forward(a)); callers assert the round-trip max-abs error.
cvector dft_roundtrip(const cvector& a, double dt);

double roundtrip_error(const cvector& a, double dt);

} // namespace echomem::num

#endif
