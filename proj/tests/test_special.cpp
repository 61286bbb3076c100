#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "echomem/optimize.hpp"
#include "echomem/quadrature.hpp"
#include "echomem/special.hpp"

using namespace echomem;

TEST_CASE("erfi at zero and unit argument") {
    CHECK(num::erfi(0.0) == 0.0);
    // (2/sqrt(pi)) int_0^1 e^{t^2} dt, frozen from the defining-integral
    // quadrature (agrees with the Dawson route to 8e-16)
    CHECK(num::erfi(1.0) == doctest::Approx(1.6504257587975429).epsilon(1e-13));
}

TEST_CASE("scaled_erfi is odd and bounded with the known maximum location") {
    for (double x : {0.3, 1.0, 2.5, 7.0, 40.0})
        CHECK(num::scaled_erfi(-x) ==
              doctest::Approx(-num::scaled_erfi(x)).epsilon(1e-14));
    const auto m = num::maximize_1d([](double x) { return num::scaled_erfi(x); },
                                    0.1, 3.0, 1e-12);
    CHECK(m.x == doctest::Approx(0.9241388730).epsilon(1e-6));
    for (double x : {0.5, 5.0, 50.0, 1e4})
        CHECK(std::fabs(num::scaled_erfi(x)) <= m.f + 1e-12);
}

TEST_CASE("scaled_erfi against the defining integral") {
    for (double x : {-5.5, -2.0, -0.7, 0.4, 1.3, 3.1, 6.0}) {
        const auto q = num::adaptive_simpson(
            [x](double t) { return std::exp(t * t - x * x); }, 0.0, x, 1e-13);
        CHECK(num::scaled_erfi(x) ==
              doctest::Approx(1.1283791670955126 * q.value).epsilon(1e-12));
    }
}

TEST_CASE("dawson branches agree across the series/sampling joint") {
    // q.value = int_0^x e^{t^2 - x^2} dt is the Dawson integral itself
    for (double x : {0.9, 0.97, 1.0, 1.03, 1.2}) {
        const auto q = num::adaptive_simpson(
            [x](double t) { return std::exp(t * t - x * x); }, 0.0, x, 1e-14);
        CHECK(num::dawson(x) == doctest::Approx(q.value).epsilon(1e-12));
    }
}

TEST_CASE("erfi relative accuracy through |x| = 8") {
    for (double x : {2.0, 4.0, 6.0, 8.0}) {
        const auto q = num::adaptive_simpson(
            [x](double t) { return std::exp(t * t - x * x); }, 0.0, x, 1e-14);
        const double ref = 1.1283791670955126 * q.value; // scaled variant
        CHECK(std::fabs(num::scaled_erfi(x) - ref) / ref < 1e-10);
    }
}

TEST_CASE("erfi domain and overflow guards") {
    CHECK_THROWS_AS(num::erfi(31.0), std::domain_error);
    CHECK_THROWS_AS(num::erfi(28.0), std::range_error);
    CHECK(std::isfinite(num::erfi(26.0)));
}
