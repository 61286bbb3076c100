#include "cli/verify.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <complex>
#include <functional>
#include <thread>

#include "echomem/afc.hpp"
#include "echomem/area.hpp"
#include "echomem/line.hpp"
#include "echomem/linear.hpp"
#include "echomem/ode.hpp"
#include "echomem/pulse.hpp"
#include "echomem/optimize.hpp"
#include "echomem/quadrature.hpp"
#include "echomem/special.hpp"
#include "echomem/transform.hpp"

namespace echomem::cli {

namespace oracle {

namespace {
int rk4_steps(double alpha0, double span) {
    const double h = std::min(1e-3 / std::max(alpha0, 1e-12), span / 1e4);
    return std::max(1, static_cast<int>(std::ceil(span / h)));
}
} // namespace

double mccall_hahn_rk4(double z, double theta0, double alpha0) {
    auto rhs = [alpha0](double, const std::array<double, 1>& y) {
        return std::array<double, 1>{-0.5 * alpha0 * std::sin(y[0])};
    };
    return num::rk4_integrate<1>(rhs, {theta0}, 0.0, z, rk4_steps(alpha0, z))[0];
}

double crib_backward_echo_rk4(double z, double theta_s0, double alpha0, double L,
                              double gamma_e) {
    // Pass 1: signal attenuation to the far face.
    auto srhs = [alpha0](double, const std::array<double, 1>& y) {
        return std::array<double, 1>{-0.5 * alpha0 * std::sin(y[0])};
    };
    const int n1 = rk4_steps(alpha0, L);
    const double theta_sL =
        num::rk4_integrate<1>(srhs, {theta_s0}, 0.0, L, n1)[0];
    // Pass 2: march the echo from its xi = L - z entry face; the signal state
    // is co-integrated in reverse so no closed form is consulted.
    auto rhs = [alpha0, gamma_e](double, const std::array<double, 2>& y) {
        const double ths = y[0], the = y[1];
        const double c = std::cos(0.5 * the);
        return std::array<double, 2>{
            +0.5 * alpha0 * std::sin(ths),
            0.5 * alpha0 * (2.0 * gamma_e * std::sin(ths) * c * c -
                            std::cos(ths) * std::sin(the))};
    };
    const double span = L - z;
    if (span <= 0.0) return 0.0;
    const int n2 = rk4_steps(alpha0, span);
    return num::rk4_integrate<2>(rhs, {theta_sL, 0.0}, 0.0, span, n2)[1];
}

double crib_forward_echo_rk4(double z, double theta_s0, double alpha0,
                             double gamma_e) {
    auto rhs = [alpha0, gamma_e](double, const std::array<double, 2>& y) {
        const double ths = y[0], the = y[1];
        const double c = std::cos(0.5 * the);
        return std::array<double, 2>{
            -0.5 * alpha0 * std::sin(ths),
            0.5 * alpha0 * (2.0 * gamma_e * std::sin(ths) * c * c -
                            std::cos(ths) * std::sin(the))};
    };
    if (z <= 0.0) return 0.0;
    return num::rk4_integrate<2>(rhs, {theta_s0, 0.0}, 0.0, z,
                                 rk4_steps(alpha0, z))[1];
}

std::pair<double, double> control_areas_rk4(double z, double theta_c1,
                                            double theta_c2, double alpha0) {
    // Second pulse crosses the inversion profile left by the first.
    auto rhs = [alpha0](double, const std::array<double, 2>& y) {
        return std::array<double, 2>{
            -0.5 * alpha0 * std::sin(y[0]),
            -0.5 * alpha0 * std::cos(y[0]) * std::sin(y[1])};
    };
    const auto r = num::rk4_integrate<2>(rhs, {theta_c1, theta_c2}, 0.0, z,
                                         rk4_steps(alpha0, std::max(z, 1e-9)));
    return {r[0], r[1]};
}

double rose_echo_rk4(double z, double theta_s0, double theta_c1, double theta_c2,
                     double alpha0, double gamma_e) {
    auto rhs = [=](double zz, const std::array<double, 3>& y) {
        const double th1 = y[0], th2 = y[1], the = y[2];
        const double s1 = std::sin(0.5 * th1), s2 = std::sin(0.5 * th2);
        const double p = gamma_e * std::exp(-0.5 * alpha0 * zz) * theta_s0 *
                         s1 * s1 * s2 * s2;
        const double w = -std::cos(th1) * std::cos(th2);
        const double c = std::cos(0.5 * the);
        return std::array<double, 3>{
            -0.5 * alpha0 * std::sin(th1),
            -0.5 * alpha0 * std::cos(th1) * std::sin(th2),
            0.5 * alpha0 * (2.0 * p * c * c + w * std::sin(the))};
    };
    if (z <= 0.0) return 0.0;
    return num::rk4_integrate<3>(rhs, {theta_c1, theta_c2, 0.0}, 0.0, z,
                                 rk4_steps(alpha0, z))[2];
}

} // namespace oracle

namespace {

void parallel_for(int n, int threads, const std::function<void(int)>& body) {
    if (threads <= 0)
        threads = static_cast<int>(std::thread::hardware_concurrency());
    threads = std::clamp(threads, 1, 16);
    if (threads == 1 || n < 4) {
        for (int i = 0; i < n; ++i) body(i);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (int t = 0; t < threads; ++t)
        pool.emplace_back([&] {
            for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1)) body(i);
        });
    for (auto& th : pool) th.join();
}

struct Battery {
    const VerifyOptions& opts;
    std::vector<CheckResult> results;

    bool wanted(const std::string& name) const {
        return opts.only.empty() || name.find(opts.only) != std::string::npos;
    }

    void add(const std::string& name, double residual, double tol,
             const std::string& note = "") {
        results.push_back({name, residual, tol, residual <= tol, note});
    }
};

std::vector<double> linspace(double lo, double hi, int n) {
    std::vector<double> v(n);
    for (int i = 0; i < n; ++i)
        v[i] = n == 1 ? lo : lo + (hi - lo) * i / (n - 1);
    return v;
}

// --- area-theorem closed forms vs RK4 ---------------------------------------

void check_area_forms(Battery& b) {
    const int n = b.opts.area_grid;
    const auto thetas = linspace(0.02 * M_PI, 0.9 * M_PI, n);
    const auto depths = linspace(0.1, 10.0, n);
    const double perturb = b.opts.perturb;

    auto sweep = [&](const std::string& name, auto f) {
        if (!b.wanted(name)) return;
        std::vector<double> res(n * n, 0.0);
        parallel_for(n * n, b.opts.threads, [&](int k) {
            res[k] = f(thetas[k / n], depths[k % n]);
        });
        b.add(name, *std::max_element(res.begin(), res.end()), 1e-7);
    };

    // in-medium profile at z = L/2; the z = 0 endpoint is the dedicated
    // output sweep below and theta_e(L) = 0 is covered by unit tests
    sweep("area_crib_backward_profile_vs_rk4", [&](double th, double d) {
        AreaProtocolConfig cfg;
        cfg.theta_s0 = th;
        cfg.alpha0 = 1.0;
        cfg.length = d;
        cfg.geometry = Geometry::Backward;
        const double closed = crib_backward_area(0.5 * d, cfg) + perturb;
        const double rk =
            oracle::crib_backward_echo_rk4(0.5 * d, th, 1.0, d, cfg.gamma_e);
        return std::fabs(closed - rk);
    });

    sweep("area_crib_backward_output_vs_rk4", [&](double th, double d) {
        AreaProtocolConfig cfg;
        cfg.theta_s0 = th;
        cfg.alpha0 = 1.0;
        cfg.length = d;
        cfg.geometry = Geometry::Backward;
        return std::fabs(crib_backward_area(0.0, cfg) -
                         oracle::crib_backward_echo_rk4(0.0, th, 1.0, d, 1.0));
    });

    sweep("area_crib_forward_vs_rk4", [&](double th, double d) {
        AreaProtocolConfig cfg;
        cfg.theta_s0 = th;
        cfg.alpha0 = 1.0;
        cfg.length = d;
        cfg.geometry = Geometry::Forward;
        return std::fabs(crib_forward_area(d, cfg) -
                         oracle::crib_forward_echo_rk4(d, th, 1.0, 1.0));
    });

    sweep("area_control_pulses_vs_rk4", [&](double th, double d) {
        const auto closed = control_pulse_areas(d, th, th, 1.0);
        const auto rk = oracle::control_areas_rk4(d, th, th, 1.0);
        return std::max(std::fabs(closed.first - rk.first),
                        std::fabs(closed.second - rk.second));
    });

    sweep("area_rose_vs_rk4", [&](double th, double d) {
        AreaProtocolConfig cfg;
        cfg.theta_s0 = 1e-3;
        cfg.theta_c1 = cfg.theta_c2 = std::max(th, 0.05 * M_PI);
        cfg.alpha0 = 1.0;
        cfg.length = d;
        return std::fabs(rose_closed_form(d, cfg) -
                         oracle::rose_echo_rk4(d, 1e-3, cfg.theta_c1,
                                               cfg.theta_c2, 1.0, 1.0));
    });

    if (b.wanted("mccall_hahn_vs_rk4")) {
        double worst = 0.0;
        for (double th : thetas)
            for (double d : {0.5, 2.0, 4.0})
                worst = std::max(worst,
                                 std::fabs(mccall_hahn_area(d, th, 1.0) -
                                           oracle::mccall_hahn_rk4(d, th, 1.0)));
        b.add("mccall_hahn_vs_rk4", worst, 1e-8);
    }
}

// --- numerics cross-checks ---------------------------------------------------

void check_numerics(Battery& b) {
    constexpr double kZeta = 2.772588722239781;

    if (b.wanted("quadrature_battery")) {
        double worst = 0.0;
        auto r1 = num::adaptive_simpson([](double x) { return x * x; }, 0.0, 1.0);
        worst = std::max(worst, std::fabs(r1.value - 1.0 / 3.0));
        auto gauss = [](double x) { return std::exp(-kZeta * x * x); };
        auto r2 = num::integrate_to_infinity(gauss, 0.0);
        worst = std::max(worst, std::fabs(2.0 * r2.value - std::sqrt(M_PI / kZeta)));
        auto r3 = num::adaptive_simpson([](double x) { return std::sin(x); }, 0.0,
                                        M_PI);
        worst = std::max(worst, std::fabs(r3.value - 2.0));
        auto r4 = num::adaptive_simpson(
            [](double x) { return std::exp(std::complex<double>(0.0, x)); }, 0.0,
            0.5 * M_PI);
        worst = std::max(worst, std::abs(r4.value - std::complex<double>(1.0, 1.0)));
        b.add("quadrature_battery", worst, 1e-10);
    }

    if (b.wanted("quadrature_wing_dual_substitution")) {
        // chi2'(0) for delta0 = 2, f = 10 through two independent maps.
        auto f = [&](double x) { return std::exp(-kZeta * x * x) / (0.0 - x); };
        const double tanh_route = num::integrate_to_infinity(f, 1.0, 1e-12).value;
        const double rational_route =
            num::integrate_to_infinity_rational(f, 1.0, 1e-12).value;
        b.add("quadrature_wing_dual_substitution",
              std::fabs(tanh_route - rational_route), 1e-9);
    }

    if (b.wanted("transform_roundtrip")) {
        num::TransformConvention g{512, 0.05};
        double worst = 0.0;
        for (int kind = 0; kind < 3; ++kind) {
            num::cvector a(g.n);
            for (int k = 0; k < g.n; ++k) {
                const double t = g.time(k);
                if (kind == 0) a[k] = std::exp(-t * t * 8.0); // delta-like
                if (kind == 1) a[k] = std::exp(-t * t / 8.0);
                if (kind == 2)
                    a[k] = std::exp(std::complex<double>(-t * t / 6.0, 2.0 * t));
            }
            worst = std::max(worst, num::roundtrip_error(a, g.dt));
        }
        b.add("transform_roundtrip", worst, 1e-10);
    }

    if (b.wanted("scaled_erfi_vs_quadrature")) {
        double worst = 0.0;
        for (int i = 0; i < 100; ++i) {
            const double x = -6.0 + 12.0 * i / 99.0;
            // defining integral, exponent kept <= 0 for stability
            const auto q = num::adaptive_simpson(
                [x](double t) { return std::exp(t * t - x * x); }, 0.0, x, 1e-13);
            const double ref = 1.1283791670955126 * q.value;
            worst = std::max(worst, std::fabs(num::scaled_erfi(x) - ref));
        }
        b.add("scaled_erfi_vs_quadrature", worst, 1e-10);
    }

    if (b.wanted("chi_quadrature_vs_lorentzian_closed_form")) {
        InhomogeneousLine line{LineShape::Lorentzian, 1.0, 1e6};
        double worst = 0.0;
        for (double w : linspace(-5.0, 5.0, 41)) {
            const auto q = chi_quadrature(line, w, 1e-12);
            const auto ref = 1.0 / std::complex<double>(1.0 + 1e-6, -w);
            worst = std::max(worst, std::abs(q - ref) / std::abs(ref));
        }
        b.add("chi_quadrature_vs_lorentzian_closed_form", worst, 1e-8,
              "relative error");
    }

    if (b.wanted("crib_fwd_closed_vs_general_quadrature")) {
        Medium med{1.0, 4.0, 1.0};
        InhomogeneousLine line{LineShape::Lorentzian, 1.0, 0.0};
        double worst = 0.0;
        for (double w : {0.25, 0.5, 1.0, 2.0}) {
            const auto gen =
                crib_forward_transfer_general(med, line, 1.0, w, med.length);
            const double closed = crib_forward_transfer(
                med.beta * med.length, 1.0, w, 1.0);
            worst = std::max(worst, std::abs(gen - closed));
        }
        b.add("crib_fwd_closed_vs_general_quadrature", worst, 5e-6,
              "general-line route carries the 1e-6 T2 regularization");
    }

    if (b.wanted("rose_formal_vs_closed_form")) {
        AreaProtocolConfig cfg;
        cfg.theta_s0 = 1e-3;
        cfg.theta_c1 = cfg.theta_c2 = 0.7 * M_PI;
        cfg.alpha0 = 1.0;
        cfg.length = 3.0;
        const double a = rose_formal_solution(3.0, cfg);
        const double c = rose_closed_form(3.0, cfg);
        b.add("rose_formal_vs_closed_form", std::fabs(a - c), 1e-7);
    }
}

void check_protocol_level(Battery& b) {
    if (b.wanted("backward_crib_energy_efficiency")) {
        num::TransformConvention g{4096, 0.25};
        const Pulse in = gaussian_pulse(1.0 / 0.01, 1.0, g);
        TransferFunction tf;
        tf.omega_grid = frequency_grid(g);
        tf.values.resize(g.n);
        tf.conjugate_input = true;
        for (int j = 0; j < g.n; ++j)
            tf.values[j] = crib_backward_transfer_depth(2.0, 1.0, tf.omega_grid[j]);
        const auto r = apply_transfer(in, tf);
        const double eff = energy_efficiency(in, r.echo);
        const double ref = std::pow(-std::expm1(-2.0), 2);
        b.add("backward_crib_energy_efficiency", std::fabs(eff - ref), 1e-4,
              "narrowband pulse against (1-e^-2)^2 = 0.747645");
    }

    if (b.wanted("afc_forward_maximum")) {
        AfcComb comb;
        comb.host.shape = LineShape::Lorentzian;
        const double gamma = comb.dephasing();
        auto eta = [&](double a) {
            return std::norm(afc_forward_transfer(comb, 0.0, a * comb.finesse));
        };
        const auto m = num::maximize_1d(eta, 0.01, 10.0, 1e-11);
        const double ref = 4.0 * std::exp(-2.0) * gamma * gamma;
        b.add("afc_forward_maximum",
              std::max(std::fabs(m.f - ref), std::fabs(m.x - 2.0)), 1e-6,
              "peak eta = 4e^-2 Gamma^2 at alpha_R,afc L = 2; the quoted 52% "
              "maximum corresponds to Gamma_afc < 1 and is documented here, "
              "not asserted (4e^-2 = 54.13% at Gamma = 1)");
    }

    if (b.wanted("parseval_transfer_consistency")) {
        num::TransformConvention g{1024, 0.1};
        const Pulse in = gaussian_pulse(2.0, 1.0, g);
        TransferFunction tf;
        tf.omega_grid = frequency_grid(g);
        tf.values.resize(g.n);
        for (int j = 0; j < g.n; ++j)
            tf.values[j] = crib_forward_transfer(2.0, 1.0, tf.omega_grid[j], 1.0);
        const auto r = apply_transfer(in, tf);
        const Spectrum s = spectrum_of(in);
        double num_i = 0.0, den = 0.0;
        for (int j = 0; j < g.n; ++j) {
            num_i += std::norm(tf.values[j]) * std::norm(s.values[j]);
            den += std::norm(s.values[j]);
        }
        const double spectral_eff = num_i / den;
        b.add("parseval_transfer_consistency",
              std::fabs(energy_efficiency(in, r.echo) - spectral_eff), 1e-9);
    }
}

} // namespace

std::vector<CheckResult> run_verification(const VerifyOptions& opts) {
    Battery b{opts, {}};
    check_area_forms(b);
    check_numerics(b);
    check_protocol_level(b);
    return b.results;
}

std::string render_report(const std::vector<CheckResult>& checks) {
    std::string out;
    char buf[160];
    for (const auto& c : checks) {
        std::snprintf(buf, sizeof(buf), "%-45s max_residual=%.3e tol=%.1e\n",
                      ((c.pass ? "PASS " : "FAIL ") + c.name).c_str(),
                      c.max_residual, c.tolerance);
        out += buf;
        if (!c.note.empty()) out += "      note: " + c.note + "\n";
    }
    return out;
}

bool all_pass(const std::vector<CheckResult>& checks) {
    for (const auto& c : checks)
        if (!c.pass) return false;
    return true;
}

} // namespace echomem::cli
