#pragma once

#include "papr_pts/harness.hpp"

#include <cstddef>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace papr::cli {

namespace exit_code {
inline constexpr int kOk = 0;
inline constexpr int kFailure = 1;
inline constexpr int kUsage = 2;
inline constexpr int kIo = 3;
inline constexpr int kRefused = 4;
} // namespace exit_code

enum class Subcommand { Ccdf, Convergence, Compare, OracleCheck };

std::string_view to_string(Subcommand subcommand) noexcept;

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// --help / -h was given; what() holds the help text.
class HelpRequested : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct CliInvocation {
    Subcommand subcommand = Subcommand::Ccdf;
    /// Model and search parameters; `optimizer` is the single optimizer for
    /// ccdf and convergence.
    ExperimentConfig config;
    /// compare only.
    std::vector<OptimizerKind> optimizers;
    double target_ccdf = 1e-3;
    /// convergence only.
    std::size_t runs = 100;
    /// oracle-check only: seeds are seed, seed+1, ..., seed+seeds-1.
    std::size_t seeds = 50;
    double grid_min = 5.0;
    double grid_max = 13.0;
    double grid_step = 0.05;
    unsigned workers = 0;
    /// Empty for stdout.
    std::string out;

    /// Flag string that reproduces this run (excludes --out and --workers).
    std::string canonical() const;
    /// One ExperimentConfig per optimizer for compare.
    std::vector<ExperimentConfig> compare_configs() const;
};

/// `args` excludes the program name. Throws UsageError or HelpRequested.
CliInvocation parse_args(std::span<const std::string> args);

/// Runs one invocation. CSV goes to `out` (or the --out file), summaries and
/// diagnostics to `err`. Returns the process exit code.
int run_cli(std::span<const std::string> args, std::ostream& out, std::ostream& err);

} // namespace papr::cli
