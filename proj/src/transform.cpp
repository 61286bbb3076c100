#include "echomem/transform.hpp"

#include <cmath>
#include <stdexcept>

namespace echomem::num {

namespace {

constexpr double kSqrt2Pi = 2.5066282746310002;

bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

// Iterative radix-2 FFT, kernel e^{sign * 2*pi*i*j*k/n}, unnormalized.
void fft_pow2(cvector& x, int sign) {
    const std::size_t n = x.size();
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(x[i], x[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = sign * 2.0 * M_PI / static_cast<double>(len);
        const std::complex<double> wl(std::cos(ang), std::sin(ang));
        for (std::size_t i = 0; i < n; i += len) {
            std::complex<double> w(1.0, 0.0);
            for (std::size_t k = 0; k < len / 2; ++k) {
                const auto u = x[i + k];
                const auto v = x[i + k + len / 2] * w;
                x[i + k] = u + v;
                x[i + k + len / 2] = u - v;
                w *= wl;
            }
        }
    }
}

// Centered-grid transform: out_j = scale * sum_k in_k e^{sign*i*w_j*t_k}
// with w_j t_k = (2*pi/n)(j-c)(k-c), c = (n-1)/2.
cvector centered(const cvector& in, double scale, int sign) {
    const std::size_t n = in.size();
    if (!is_pow2(n))
        throw std::invalid_argument("transform: size must be a power of two");
    const double c = 0.5 * (static_cast<double>(n) - 1.0);
    const double phi = 2.0 * M_PI / static_cast<double>(n);
    cvector x(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double ang = -sign * phi * c * static_cast<double>(k);
        x[k] = in[k] * std::complex<double>(std::cos(ang), std::sin(ang));
    }
    fft_pow2(x, sign);
    const double cc = sign * phi * c * c;
    const std::complex<double> pcc(std::cos(cc), std::sin(cc));
    cvector out(n);
    for (std::size_t j = 0; j < n; ++j) {
        const double ang = -sign * phi * c * static_cast<double>(j);
        out[j] = scale * pcc * std::complex<double>(std::cos(ang), std::sin(ang)) * x[j];
    }
    return out;
}

} // namespace

double TransformConvention::domega() const { return 2.0 * M_PI / (n * dt); }
double TransformConvention::time(int k) const { return (k - 0.5 * (n - 1)) * dt; }
double TransformConvention::omega(int j) const {
    return (j - 0.5 * (n - 1)) * domega();
}

cvector forward_transform(const cvector& a, double dt) {
    return centered(a, dt / kSqrt2Pi, +1);
}

cvector inverse_transform(const cvector& s, double dt) {
    const double dw = 2.0 * M_PI / (static_cast<double>(s.size()) * dt);
    return centered(s, dw / kSqrt2Pi, -1);
}

cvector dft_roundtrip(const cvector& a, double dt) {
    return inverse_transform(forward_transform(a, dt), dt);
}

double roundtrip_error(const cvector& a, double dt) {
    const cvector r = dft_roundtrip(a, dt);
    double m = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k)
        m = std::max(m, std::abs(r[k] - a[k]));
    return m;
}

} // namespace echomem::num
