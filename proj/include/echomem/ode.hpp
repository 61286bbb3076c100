#ifndef ECHOMEM_ODE_HPP
#define ECHOMEM_ODE_HPP

#include <array>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

namespace echomem::num {

// Fixed-step classic RK4 for small autonomous-in-form systems y' = f(z, y).
// Deterministic by construction; the right-hand sides used here are smooth
// and nonstiff, so no adaptive control is needed.
template <std::size_t N, typename F>
std::array<double, N> rk4_integrate(const F& rhs, std::array<double, N> y,
                                    double z0, double z1, int steps) {
    if (steps <= 0) throw std::invalid_argument("rk4_integrate: steps <= 0");
    const double h = (z1 - z0) / steps;
    if (std::fabs(h) < 1e-300)
        throw std::invalid_argument("rk4_integrate: step-size underflow");
    std::array<double, N> k1, k2, k3, k4, tmp;
    double z = z0;
    for (int i = 0; i < steps; ++i) {
        k1 = rhs(z, y);
        for (std::size_t j = 0; j < N; ++j) tmp[j] = y[j] + 0.5 * h * k1[j];
        k2 = rhs(z + 0.5 * h, tmp);
        for (std::size_t j = 0; j < N; ++j) tmp[j] = y[j] + 0.5 * h * k2[j];
        k3 = rhs(z + 0.5 * h, tmp);
        for (std::size_t j = 0; j < N; ++j) tmp[j] = y[j] + h * k3[j];
        k4 = rhs(z + h, tmp);
        for (std::size_t j = 0; j < N; ++j)
            y[j] += (h / 6.0) * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]);
        z = z0 + (i + 1) * h;
    }
    return y;
}

struct OdeProfile {
    std::vector<double> z;
    std::vector<double> theta;
    double richardson_error = 0.0; // |theta_h - theta_h/2| at the endpoint
};

// Scalar area-theorem trajectory theta(z) with a half-step Richardson check.
// step_hint <= 0 selects the default step min(1e-3, |z1-z0|/1e4).
template <typename F>
OdeProfile integrate_area_ode(const F& rhs, double theta0, double z0, double z1,
                              double step_hint = -1.0, int samples = 65) {
    const double span = std::fabs(z1 - z0);
    if (span == 0.0) return {{z0}, {theta0}, 0.0};
    double h = step_hint > 0.0 ? step_hint : std::min(1e-3, span / 1e4);
    int steps = std::max(1, static_cast<int>(std::ceil(span / h)));
    OdeProfile out;
    out.z.reserve(samples);
    out.theta.reserve(samples);
    auto sys = [&](double z, const std::array<double, 1>& y) {
        return std::array<double, 1>{rhs(z, y[0])};
    };
    for (int s = 0; s < samples; ++s) {
        const double zs = z0 + (z1 - z0) * s / (samples - 1);
        const int n = std::max(1, static_cast<int>(std::ceil(
                                      std::fabs(zs - z0) / (span / steps))));
        out.z.push_back(zs);
        out.theta.push_back(
            s == 0 ? theta0 : rk4_integrate<1>(sys, {theta0}, z0, zs, n)[0]);
    }
    const double full = out.theta.back();
    const double half =
        rk4_integrate<1>(sys, {theta0}, z0, z1, 2 * steps)[0];
    out.richardson_error = std::fabs(full - half);
    return out;
}

} // namespace echomem::num

#endif
