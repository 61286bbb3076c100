#ifndef ECHOMEM_CLI_VERIFY_HPP
#define ECHOMEM_CLI_VERIFY_HPP

#include <string>
#include <vector>

namespace echomem::cli {

struct CheckResult {
    std::string name;
    double max_residual = 0.0;
    double tolerance = 0.0;
    bool pass = false;
    std::string note;
};

struct VerifyOptions {
    std::string only;     // substring filter on check names; empty = all
    double perturb = 0.0; // test-harness fault injection into one closed form
    int area_grid = 12;   // points per axis for the area-theorem sweeps
    int threads = 0;      // 0 = hardware concurrency
};

// Oracle-vs-closed-form battery: RK4 integration of the echo-area equation
// against every closed form, quadrature and special-function cross-checks,
// and transform round-trips. Pure; deterministic for fixed options.
std::vector<CheckResult> run_verification(const VerifyOptions& opts = {});

std::string render_report(const std::vector<CheckResult>& checks);
bool all_pass(const std::vector<CheckResult>& checks);

// RK4 references used by the battery and by the acceptance suite. Each one
// integrates the defining area equation with the protocol sources; none of
// them evaluates a closed-form solution. Step: min(1e-3/alpha0, L/1e4).
namespace oracle {
double mccall_hahn_rk4(double z, double theta0, double alpha0);
double crib_backward_echo_rk4(double z, double theta_s0, double alpha0, double L,
                              double gamma_e);
double crib_forward_echo_rk4(double z, double theta_s0, double alpha0,
                             double gamma_e);
std::pair<double, double> control_areas_rk4(double z, double theta_c1,
                                            double theta_c2, double alpha0);
double rose_echo_rk4(double z, double theta_s0, double theta_c1, double theta_c2,
                     double alpha0, double gamma_e);
} // namespace oracle

} // namespace echomem::cli

#endif
