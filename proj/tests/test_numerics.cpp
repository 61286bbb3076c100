#include <doctest.h>

#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <vector>

#include "echomem/ode.hpp"
#include "echomem/optimize.hpp"
#include "echomem/quadrature.hpp"
#include "echomem/transform.hpp"

using namespace echomem;

namespace {
constexpr double kZeta = 2.772588722239781;

// quadratic-cost reference transform, independent of the FFT path
num::cvector direct_forward(const num::cvector& a, double dt) {
    const int n = static_cast<int>(a.size());
    num::TransformConvention g{n, dt};
    num::cvector s(n);
    for (int j = 0; j < n; ++j) {
        std::complex<double> acc = 0.0;
        for (int k = 0; k < n; ++k) {
            const double ph = g.omega(j) * g.time(k);
            acc += a[k] * std::complex<double>(std::cos(ph), std::sin(ph));
        }
        s[j] = acc * (dt / 2.5066282746310002);
    }
    return s;
}
} // namespace

TEST_CASE("adaptive Simpson on a battery of analytic integrals") {
    struct Item {
        std::function<double(double)> f;
        double a, b, exact;
    };
    const std::vector<Item> battery = {
        {[](double x) { return x * x; }, 0.0, 1.0, 1.0 / 3.0},
        {[](double x) { return x * x * x - x; }, -1.0, 2.0, 2.25},
        {[](double x) { return std::sin(x); }, 0.0, M_PI, 2.0},
        {[](double x) { return std::cos(x); }, 0.0, 1.0, std::sin(1.0)},
        {[](double x) { return std::exp(x); }, 0.0, 1.0, std::exp(1.0) - 1.0},
        {[](double x) { return std::exp(-x); }, 0.0, 30.0, 1.0 - std::exp(-30.0)},
        {[](double x) { return 1.0 / (1.0 + x * x); }, -1.0, 1.0, 0.5 * M_PI},
        {[](double x) { return 1.0 / x; }, 1.0, std::exp(1.0), 1.0},
        {[](double x) { return std::log(x); }, 1.0, 2.0, 2.0 * std::log(2.0) - 1.0},
        {[](double x) { return x * std::exp(-x * x); }, 0.0, 4.0,
         0.5 * (1.0 - std::exp(-16.0))},
        {[](double x) { return std::sin(10.0 * x); }, 0.0, M_PI,
         (1.0 - std::cos(10.0 * M_PI)) / 10.0},
        {[](double x) { return std::cosh(x); }, -1.0, 1.0, 2.0 * std::sinh(1.0)},
        {[](double x) { return 1.0 / (2.0 + std::sin(x)); }, 0.0, 2.0 * M_PI,
         2.0 * M_PI / std::sqrt(3.0)},
        {[](double x) { return std::sqrt(1.0 + x * x); }, 0.0, 1.0,
         0.5 * (std::sqrt(2.0) + std::asinh(1.0))},
        {[](double x) { return std::exp(-kZeta * x * x); }, -6.0, 6.0,
         std::sqrt(M_PI / kZeta)},
        {[](double x) { return x * x * std::exp(-x); }, 0.0, 40.0,
         2.0 - std::exp(-40.0) * (40.0 * 40.0 + 2.0 * 40.0 + 2.0)},
        {[](double x) { return std::atan(x); }, 0.0, 1.0,
         0.25 * M_PI - 0.5 * std::log(2.0)},
        {[](double x) { return 1.0 / (1.0 + std::exp(-x)); }, -5.0, 5.0, 5.0},
        {[](double x) { return std::sin(x) * std::exp(-x); }, 0.0, 20.0,
         0.5 * (1.0 - std::exp(-20.0) * (std::sin(20.0) + std::cos(20.0)))},
        {[](double x) { return std::pow(x, 1.5); }, 0.0, 1.0, 0.4},
    };
    for (const auto& it : battery) {
        const auto r = num::adaptive_simpson(it.f, it.a, it.b, 1e-11);
        const double err = std::fabs(r.value - it.exact);
        CHECK(err < 1e-9);
        // conservative estimates: observed error within estimate + roundoff
        CHECK(err <= r.error_estimate + 1e-12 * (1.0 + std::fabs(it.exact)));
    }
}

TEST_CASE("semi-infinite maps agree with each other and with closed forms") {
    auto gauss = [](double x) { return std::exp(-kZeta * x * x); };
    const auto t = num::integrate_to_infinity(gauss, 0.0, 1e-11);
    CHECK(2.0 * t.value == doctest::Approx(std::sqrt(M_PI / kZeta)).epsilon(1e-9));

    auto wing = [](double x) { return std::exp(-kZeta * x * x) / (0.3 - x); };
    const double a = num::integrate_to_infinity(wing, 1.0, 1e-12).value;
    const double b = num::integrate_to_infinity_rational(wing, 1.0, 1e-12).value;
    CHECK(a == doctest::Approx(b).epsilon(1e-9));
}

TEST_CASE("adaptive Simpson reports non-convergence") {
    // non-integrable endpoint: panels at 0 never settle
    auto nasty = [](double x) { return 1.0 / x; };
    CHECK_THROWS_AS(num::adaptive_simpson(nasty, 0.0, 1.0, 1e-12),
                    std::runtime_error);
}

TEST_CASE("reversed bounds flip the sign") {
    const auto r = num::adaptive_simpson([](double x) { return x; }, 1.0, 0.0);
    CHECK(r.value == doctest::Approx(-0.5).epsilon(1e-14));
}

TEST_CASE("golden-section maximizer") {
    const auto p = num::maximize_1d([](double x) { return -(x - 2.0) * (x - 2.0); },
                                    0.0, 5.0, 1e-11);
    CHECK(p.x == doctest::Approx(2.0).epsilon(1e-9));
    const auto q = num::maximize_1d(
        [](double a) { return a * a * std::exp(-a); }, 0.1, 20.0, 1e-11);
    // extremum location is noise-limited at ~sqrt(eps)*scale
    CHECK(q.x == doctest::Approx(2.0).epsilon(1e-7));
    CHECK(q.f == doctest::Approx(4.0 * std::exp(-2.0)).epsilon(1e-12));
    CHECK_THROWS_AS(num::maximize_1d([](double x) { return x; }, 0.0, 1.0, 1e-10),
                    std::runtime_error);
}

TEST_CASE("RK4 area-ODE driver") {
    auto zero_rhs = [](double, double) { return 0.0; };
    const auto flat = num::integrate_area_ode(zero_rhs, 0.7, 0.0, 3.0);
    for (double th : flat.theta) CHECK(th == doctest::Approx(0.7).epsilon(1e-15));

    // attenuation equation from theta0 = pi/2 against its closed form
    const double theta0 = 0.5 * M_PI;
    auto rhs = [](double, double th) { return -0.5 * std::sin(th); };
    const auto prof = num::integrate_area_ode(rhs, theta0, 0.0, 4.0);
    CHECK(prof.richardson_error < 1e-9);
    for (std::size_t i = 0; i < prof.z.size(); ++i) {
        const double ref =
            2.0 * std::atan(std::tan(0.5 * theta0) * std::exp(-0.5 * prof.z[i]));
        CHECK(prof.theta[i] == doctest::Approx(ref).epsilon(1e-8));
    }
}

TEST_CASE("transform round-trip on delta-like, Gaussian, chirped envelopes") {
    num::TransformConvention g{1024, 0.05};
    for (int kind = 0; kind < 3; ++kind) {
        num::cvector a(g.n);
        for (int k = 0; k < g.n; ++k) {
            const double t = g.time(k);
            if (kind == 0) a[k] = std::exp(-t * t * 40.0);
            if (kind == 1) a[k] = std::exp(-t * t / 12.0);
            if (kind == 2)
                a[k] = std::exp(std::complex<double>(-t * t / 9.0, 1.7 * t));
        }
        CHECK(num::roundtrip_error(a, g.dt) < 1e-10);
    }
}

TEST_CASE("FFT path equals the quadratic-cost reference transform") {
    num::TransformConvention g{128, 0.11};
    num::cvector a(g.n);
    for (int k = 0; k < g.n; ++k) {
        const double t = g.time(k);
        a[k] = std::exp(std::complex<double>(-t * t / 4.0, 0.9 * t)) +
               0.3 * std::exp(-(t - 1.0) * (t - 1.0));
    }
    const auto fast = num::forward_transform(a, g.dt);
    const auto slow = direct_forward(a, g.dt);
    for (int j = 0; j < g.n; ++j)
        CHECK(std::abs(fast[j] - slow[j]) < 1e-12);
}

TEST_CASE("transform grid is symmetric so reversal is an index flip") {
    num::TransformConvention g{64, 0.2};
    for (int k = 0; k < g.n; ++k)
        CHECK(g.time(k) == doctest::Approx(-g.time(g.n - 1 - k)).epsilon(1e-15));
    CHECK(g.omega(0) == doctest::Approx(-g.omega(g.n - 1)).epsilon(1e-15));
}

TEST_CASE("power-of-two size is enforced") {
    num::cvector a(100, 0.0);
    CHECK_THROWS_AS(num::forward_transform(a, 0.1), std::invalid_argument);
}
