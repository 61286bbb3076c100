#ifndef ECHOMEM_CLI_COMMANDS_HPP
#define ECHOMEM_CLI_COMMANDS_HPP

#include <string>

#include "cli/config.hpp"
#include "cli/verify.hpp"

namespace echomem::cli {

// Exit codes shared by the binary and the library entry points.
inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitInfeasible = 3;
inline constexpr int kExitNumerical = 4;

struct CommandOptions {
    std::string out_dir = "out"; // ECHOMEM_OUT environment variable wins
    bool strict = false;         // escalate aliasing warnings to errors
    bool svg = false;
    int jobs = 1;
};

// Spectral response curves (transfer + efficiency vs omega).
int cmd_respond(const RunConfig& cfg, const CommandOptions& opt,
                std::string& summary);

// 2-D sweeps: depth x omega, depth x theta_s, delta0 x omega, theta_c x
// alpha z, depending on protocol/observable. Deterministic row-major output
// for any jobs count.
int cmd_map(const RunConfig& cfg, const CommandOptions& opt,
            std::string& summary);

// Full storage/retrieval of a Gaussian pulse through the selected transfer.
int cmd_echo(const RunConfig& cfg, const CommandOptions& opt,
             std::string& summary);

// Comb design search maximizing worst-case efficiency over the target band.
int cmd_afc_design(const RunConfig& cfg, const CommandOptions& opt,
                   std::string& summary);

// Oracle-vs-closed-form battery; exit 0 iff all checks pass.
int cmd_verify(const VerifyOptions& vopts, const CommandOptions& opt,
               std::string& summary);

std::string resolve_out_dir(const std::string& flag_value);

} // namespace echomem::cli

#endif
