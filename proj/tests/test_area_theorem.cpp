#include <doctest.h>

#include <cmath>
#include <utility>

#include "cli/verify.hpp"
#include "echomem/area.hpp"
#include "echomem/optimize.hpp"

using namespace echomem;

namespace {
AreaProtocolConfig base_cfg(double theta_s0, double alpha_l,
                            Geometry geo = Geometry::Backward) {
    AreaProtocolConfig c;
    c.theta_s0 = theta_s0;
    c.alpha0 = 1.0;
    c.length = alpha_l;
    c.geometry = geo;
    return c;
}
} // namespace

TEST_CASE("attenuation solution basics and oracle agreement") {
    CHECK(mccall_hahn_area(3.0, 0.0, 1.0) == 0.0);
    CHECK(mccall_hahn_area(0.0, 1.1, 2.0) == doctest::Approx(1.1).epsilon(1e-15));
    const double th = mccall_hahn_area(4.0, 0.9 * M_PI, 1.0);
    CHECK(th == doctest::Approx(cli::oracle::mccall_hahn_rk4(4.0, 0.9 * M_PI, 1.0))
                    .epsilon(1e-8));
    CHECK_THROWS_AS(mccall_hahn_area(1.0, M_PI, 1.0), std::domain_error);
    CHECK_THROWS_AS(mccall_hahn_area(1.0, M_PI - 1e-10, 1.0), std::domain_error);
}

TEST_CASE("echo-area equation right-hand side") {
    // the source-free absorber limit is the attenuation equation
    for (double th : {0.1, 1.0, 2.5})
        CHECK(area_ode_rhs(th, 0.0, -1.0, 2.0, +1) ==
              doctest::Approx(-std::sin(th)).epsilon(1e-15));
    CHECK(area_ode_rhs(0.0, 0.4, -0.3, 2.0, +1) ==
          doctest::Approx(2.0 * 0.4).epsilon(1e-15)); // pure source term
    CHECK(area_ode_rhs(M_PI, 0.0, 0.7, 2.0, +1) == doctest::Approx(0.0));
}

TEST_CASE("backward CRIB area: limits, oracle, monotonicity") {
    // thin medium: Gamma sin(theta) alpha L within O((alpha L)^2)
    for (double th : {0.3, 1.2, 0.9 * M_PI}) {
        const auto cfg = base_cfg(th, 0.01);
        const double e = crib_backward_area(0.0, cfg);
        CHECK(std::fabs(e - std::sin(th) * 0.01) < 2.0 * 0.01 * 0.01);
    }
    // thick medium: complete area reconstruction
    for (double th : {0.3, 0.5 * M_PI, 0.9 * M_PI}) {
        const auto cfg = base_cfg(th, 20.0);
        CHECK(crib_backward_area(0.0, cfg) == doctest::Approx(th).epsilon(1e-6));
    }
    // closed form vs RK4 of the defining equation
    const auto cfg = base_cfg(0.5 * M_PI, 3.0);
    for (double z : {0.0, 1.0, 2.2, 3.0})
        CHECK(crib_backward_area(z, cfg) ==
              doctest::Approx(cli::oracle::crib_backward_echo_rk4(z, 0.5 * M_PI,
                                                                  1.0, 3.0, 1.0))
                  .epsilon(1e-7));
    CHECK(crib_backward_area(cfg.length, cfg) ==
          doctest::Approx(0.0).epsilon(1e-12)); // far-face boundary
    // monotone in depth
    double prev = -1.0;
    for (double d : {0.2, 0.8, 2.0, 5.0, 12.0}) {
        const double e = crib_backward_area(0.0, base_cfg(0.7 * M_PI, d));
        CHECK(e > prev);
        prev = e;
    }
}

TEST_CASE("forward CRIB area: linear limit, boundary, optimal-depth growth") {
    const auto weak = base_cfg(1e-4, 3.0, Geometry::Forward);
    CHECK(crib_forward_area(3.0, weak) ==
          doctest::Approx(1e-4 * 3.0 * std::exp(-1.5)).epsilon(1e-6));
    CHECK(crib_forward_area(0.0, base_cfg(1.0, 5.0, Geometry::Forward)) == 0.0);

    // the maximum of the echo area sits where alpha z = 2 / cos(theta_s(z));
    // it moves past 2 as the input area grows
    double prev_z = 0.0;
    for (double th : {0.2, 0.5 * M_PI, 0.8 * M_PI}) {
        auto cfg = base_cfg(th, 40.0, Geometry::Forward);
        const auto m = num::maximize_1d(
            [&](double z) { return crib_forward_area(z, cfg); }, 0.05, 30.0, 1e-10);
        const double ths = mccall_hahn_area(m.x, th, 1.0);
        CHECK(m.x * std::cos(ths) == doctest::Approx(2.0).epsilon(1e-5));
        CHECK(m.x >= prev_z);
        prev_z = m.x;
    }
}

TEST_CASE("control-pulse propagation") {
    const auto z0 = control_pulse_areas(0.0, 2.2, 1.8, 1.0);
    CHECK(z0.first == doctest::Approx(2.2).epsilon(1e-15));
    CHECK(z0.second == doctest::Approx(1.8).epsilon(1e-15));

    // amplification of the second pulse while beta1^2 >> e^{alpha z}
    const double big = 0.999 * M_PI;
    double prev = 0.0;
    for (double z : {0.0, 1.0, 2.0}) {
        const auto th = control_pulse_areas(z, big, 0.8 * M_PI, 1.0);
        CHECK(th.second >= prev);
        prev = th.second;
    }

    // against the sequential RK4 oracle
    const auto cl = control_pulse_areas(2.0, 0.8 * M_PI, 0.8 * M_PI, 1.0);
    const auto rk = cli::oracle::control_areas_rk4(2.0, 0.8 * M_PI, 0.8 * M_PI, 1.0);
    CHECK(cl.first == doctest::Approx(rk.first).epsilon(1e-7));
    CHECK(cl.second == doctest::Approx(rk.second).epsilon(1e-7));

    CHECK_THROWS_AS(control_pulse_areas(1.0, M_PI, 0.5, 1.0), std::domain_error);
}

TEST_CASE("ROSE sources") {
    auto cfg = base_cfg(0.01, 4.0, Geometry::Forward);
    cfg.theta_c1 = cfg.theta_c2 = M_PI;
    for (double z : {0.0, 1.0, 3.0}) {
        const EchoSource s = rose_sources(z, cfg);
        CHECK(s.p_e == doctest::Approx(0.01 * std::exp(-0.5 * z)).epsilon(1e-12));
        CHECK(s.w_e == doctest::Approx(-1.0).epsilon(1e-12));
    }
    cfg.theta_c1 = cfg.theta_c2 = 0.0;
    CHECK(rose_sources(1.0, cfg).p_e == 0.0);

    // compositional consistency with the propagated control areas
    cfg.theta_c1 = cfg.theta_c2 = 0.8 * M_PI;
    const auto th = control_pulse_areas(1.0, 0.8 * M_PI, 0.8 * M_PI, 1.0);
    const EchoSource s = rose_sources(1.0, cfg);
    const double s1 = std::sin(0.5 * th.first), s2 = std::sin(0.5 * th.second);
    CHECK(s.p_e == doctest::Approx(0.01 * std::exp(-0.5) * s1 * s1 * s2 * s2)
                       .epsilon(1e-12));
    CHECK(s.w_e ==
          doctest::Approx(-std::cos(th.first) * std::cos(th.second)).epsilon(1e-12));
    CHECK(std::fabs(s.p_e) <= 1.0);
    CHECK(s.w_e >= -1.0);
    CHECK(s.w_e <= 1.0);
}

TEST_CASE("ROSE formal solution") {
    auto cfg = base_cfg(1e-3, 3.0, Geometry::Forward);
    cfg.theta_c1 = cfg.theta_c2 = M_PI;
    // pi,pi controls: both integrals are elementary
    for (double z : {0.5, 2.0, 3.0}) {
        const double ref = 2.0 * std::atan(0.5 * 1e-3 * z * std::exp(-0.5 * z));
        CHECK(rose_formal_solution(z, cfg) == doctest::Approx(ref).epsilon(1e-9));
    }
    cfg.theta_c1 = cfg.theta_c2 = 0.0;
    CHECK(rose_formal_solution(2.0, cfg) == 0.0);

    cfg.theta_c1 = cfg.theta_c2 = 0.7 * M_PI;
    const double formal = rose_formal_solution(3.0, cfg);
    CHECK(formal == doctest::Approx(rose_closed_form(3.0, cfg)).epsilon(1e-7));

    // the verbatim reading scales the arctan argument by Gamma theta_s0
    RoseFormalOptions verbatim;
    verbatim.verbatim_prefactor = true;
    const double v = rose_formal_solution(3.0, cfg, verbatim);
    CHECK(std::tan(0.5 * v) ==
          doctest::Approx(cfg.gamma_e * cfg.theta_s0 * std::tan(0.5 * formal))
              .epsilon(1e-10));
}

TEST_CASE("ROSE closed form") {
    auto cfg = base_cfg(1e-3, 10.0, Geometry::Forward);
    CHECK(rose_closed_form(0.0, cfg) == doctest::Approx(0.0));

    // pi,pi limit lands on the two-pulse-echo shape (floating tan(pi/2) is
    // huge-finite, so no special casing is involved)
    cfg.theta_c1 = cfg.theta_c2 = M_PI;
    for (double z : {0.5, 2.0, 6.0}) {
        const double ref = 2.0 * std::atan(0.5 * 1e-3 * z * std::exp(-0.5 * z));
        CHECK(rose_closed_form(z, cfg) == doctest::Approx(ref).epsilon(1e-12));
    }
    // matches the large-but-finite control areas continuously
    cfg.theta_c1 = cfg.theta_c2 = M_PI - 1e-7;
    for (double z : {0.5, 2.0})
        CHECK(rose_closed_form(z, cfg) ==
              doctest::Approx(2.0 * std::atan(0.5 * 1e-3 * z * std::exp(-0.5 * z)))
                  .epsilon(1e-9));

    cfg.theta_c1 = 0.0;
    CHECK_THROWS_AS(rose_closed_form(1.0, cfg), std::domain_error);

    // echo gain for 0.8 pi controls in a deep medium
    cfg.theta_c1 = cfg.theta_c2 = 0.8 * M_PI;
    const double th4 = rose_closed_form(4.0, cfg);
    CHECK(efficiency_measures(th4, cfg.theta_s0).first > 1.0);

    // RK4 agreement across a small grid
    for (double thc : {0.3 * M_PI, 0.6 * M_PI, 0.85 * M_PI})
        for (double z : {0.5, 2.0, 5.0}) {
            cfg.theta_c1 = cfg.theta_c2 = thc;
            CHECK(rose_closed_form(z, cfg) ==
                  doctest::Approx(cli::oracle::rose_echo_rk4(z, 1e-3, thc, thc,
                                                             1.0, 1.0))
                      .epsilon(1e-7));
        }
}

TEST_CASE("dephasing scales the tangent of every closed form linearly") {
    for (double c : {0.25, 0.6, 0.9}) {
        auto full = base_cfg(0.6 * M_PI, 3.0);
        auto part = full;
        part.gamma_e = c;
        CHECK(std::tan(0.5 * crib_backward_area(0.0, part)) ==
              doctest::Approx(c * std::tan(0.5 * crib_backward_area(0.0, full)))
                  .epsilon(1e-13));
        full.geometry = part.geometry = Geometry::Forward;
        CHECK(std::tan(0.5 * crib_forward_area(2.0, part)) ==
              doctest::Approx(c * std::tan(0.5 * crib_forward_area(2.0, full)))
                  .epsilon(1e-13));
        auto rose_full = base_cfg(1e-3, 3.0, Geometry::Forward);
        rose_full.theta_c1 = rose_full.theta_c2 = 0.75 * M_PI;
        auto rose_part = rose_full;
        rose_part.gamma_e = c;
        CHECK(std::tan(0.5 * rose_closed_form(3.0, rose_part)) ==
              doctest::Approx(c * std::tan(0.5 * rose_closed_form(3.0, rose_full)))
                  .epsilon(1e-13));
    }
}

TEST_CASE("efficiency measures") {
    const auto [et, etan] = efficiency_measures(0.4, 0.4);
    CHECK(et == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(etan == doctest::Approx(1.0).epsilon(1e-15));
    const auto [st, stan] = efficiency_measures(0.01, 0.02);
    CHECK(st == doctest::Approx(stan).epsilon(1e-3)); // small-angle agreement
    CHECK_THROWS_AS(efficiency_measures(0.1, 0.0), std::invalid_argument);
}

TEST_CASE("near-bifurcation efficiency approaches unity before decaying") {
    // the approach to unity is asymptotic (logarithmically slow in pi - theta)
    auto peak_eta = [](double theta_s0) {
        auto cfg = base_cfg(theta_s0, 80.0, Geometry::Forward);
        double peak = 0.0;
        for (double z = 0.25; z <= 80.0; z += 0.25)
            peak = std::max(
                peak, efficiency_measures(crib_forward_area(z, cfg), theta_s0).first);
        return peak;
    };
    const double p1 = peak_eta(0.5 * M_PI);
    const double p2 = peak_eta(0.9 * M_PI);
    const double p3 = peak_eta(0.999 * M_PI);
    CHECK(p2 > p1);
    CHECK(p3 > p2);
    CHECK(p3 > 0.8);
    auto cfg = base_cfg(0.999 * M_PI, 80.0, Geometry::Forward);
    CHECK(efficiency_measures(crib_forward_area(80.0, cfg), cfg.theta_s0).first <
          0.05); // collapses at large depth
}

TEST_CASE("ROSE gain map") {
    auto cfg = base_cfg(1e-6, 1.0, Geometry::Forward);
    std::vector<double> thc{0.75 * M_PI, 0.8 * M_PI, M_PI};
    std::vector<double> az{1.0, 2.0, 4.0};
    const auto map = rose_gain_map(thc, az, cfg);
    REQUIRE(map.size() == 3);
    // pi column is the two-pulse-echo profile with its 4e^-2 ceiling at az = 2
    for (std::size_t j = 0; j < az.size(); ++j) {
        const double ref = az[j] * az[j] * std::exp(-az[j]);
        CHECK(map[2][j] == doctest::Approx(ref).epsilon(1e-9));
        CHECK(map[2][j] <= 4.0 * std::exp(-2.0) + 1e-12);
    }
    CHECK(map[2][1] == doctest::Approx(4.0 * std::exp(-2.0)).epsilon(1e-9));
    // gain region: 0.8 pi controls beat both pi controls and unity at az = 4
    CHECK(map[1][2] > 1.0);
    CHECK(map[1][2] > map[2][2]);

    // near-pi controls keep a local maximum in depth near az = 2
    AreaProtocolConfig np = cfg;
    np.theta_c1 = np.theta_c2 = 0.95 * M_PI;
    const auto m = num::maximize_1d(
        [&](double zz) { return rose_closed_form(zz, np); }, 0.3, 6.0, 1e-10);
    CHECK(m.x > 1.5);
    CHECK(m.x < 3.0);
}

TEST_CASE("profiles stay on the principal branch") {
    const auto prof = crib_area_profile(base_cfg(0.9 * M_PI, 8.0), 257);
    for (double th : prof.theta_values) {
        CHECK(th > -M_PI);
        CHECK(th <= M_PI);
    }
    CHECK(prof.efficiency_theta > 0.9); // deep backward medium reconstructs
    const auto fwd =
        crib_area_profile(base_cfg(0.5 * M_PI, 2.0, Geometry::Forward), 65);
    CHECK(fwd.theta_values.front() == 0.0);
}

TEST_CASE("config validation") {
    AreaProtocolConfig bad;
    bad.theta_s0 = M_PI;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = AreaProtocolConfig{};
    bad.gamma_e = 1.5;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = AreaProtocolConfig{};
    bad.theta_c1 = 3.5;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}
