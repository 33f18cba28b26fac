#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "jcdem/entropy.hpp"

namespace jcdem::cli {

enum class Command { Transition, ScanTime, ScanLambda, Revival };

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

struct RunConfig {
    Command command = Command::ScanTime;
    double g = 1.0;
    double omega0 = 1.0;
    double mean_photons = 5.0;
    double lambda0 = 0.7;
    double t_max = 50.0;
    double dt = 0.05;
    double tail_tol = 1e-12;
    LogBase log_base = LogBase::E;
    std::size_t lambda_points = 21;
    std::string out_csv;  // defaults to "<command>.csv"
    std::optional<std::string> out_svg;
};

std::string command_name(Command c);

struct ParseOutcome {
    std::optional<RunConfig> config;  // empty when the process should exit with exit_code
    int exit_code = kExitOk;
};

/// `args` excludes the program name. Help goes to `out`, usage errors to `err`.
ParseOutcome parse_args(const std::vector<std::string>& args, std::ostream& out,
                        std::ostream& err);

/// Runs one command; 0 on success, 1 on numerical or I/O failure.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

int main_with_args(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace jcdem::cli
