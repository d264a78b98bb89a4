#pragma once

#include "papr_pts/optimizers.hpp"
#include "papr_pts/pts.hpp"
#include "papr_pts/signal.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace papr {

enum class OptimizerKind { None, Abc, Ipts, RandomSearch, GradientDescent, Exhaustive };

std::string_view to_string(OptimizerKind kind) noexcept;
std::optional<OptimizerKind> parse_optimizer(std::string_view name) noexcept;

/// True for optimizers that record a per-iteration trajectory.
bool has_trajectory(OptimizerKind kind) noexcept;

/// 5.0 to 13.0 dB in 0.05 dB steps (161 points).
std::vector<double> default_threshold_grid();
/// first + i·step for i = 0..round((last − first)/step).
std::vector<double> threshold_grid(double first, double last, double step);

struct ExperimentConfig {
    int n = 256;
    Modulation modulation = Modulation::Qam16;
    int oversampling = kDefaultOversampling;
    int m = 16;
    int w = 2;
    PartitionScheme partition = PartitionScheme::Random;
    /// Draw a new partition for every symbol instead of one per experiment.
    bool per_symbol_partition = false;

    OptimizerKind optimizer = OptimizerKind::None;
    AbcConfig abc{};
    int rs_trials = 900;
    int gd_radius = 2;
    int gd_iterations = 3;
    bool fix_first = true;
    std::uint64_t exhaustive_cap = std::uint64_t{1} << 20;

    std::size_t symbol_count = 100000;
    std::uint64_t master_seed = 0;
    std::vector<double> thresholds_db = default_threshold_grid();

    /// Throws InvalidInput on the first violated constraint.
    void validate() const;
};

/// Result of processing one random OFDM symbol.
struct SymbolOutcome {
    double papr_db = 0.0;
    std::size_t evaluations = 0;
};

/// Processes symbols 0..symbol_count−1. Symbol i draws its data and its
/// optimizer randomness from substream(master_seed, i); the shared partition
/// comes from substream(master_seed, stream::kPartition). Results are indexed by
/// symbol and do not depend on `workers` (0 = hardware concurrency).
std::vector<SymbolOutcome> run_symbols(const ExperimentConfig& config, unsigned workers = 0);

/// Runs the configured optimizer on one symbol's subblocks.
OptimizerReport run_optimizer(const ExperimentConfig& config, const SubblockSignals& subblocks, Rng& rng);

struct CcdfCurve {
    std::vector<double> thresholds_db;
    /// Fraction of samples strictly above each threshold.
    std::vector<double> probabilities;
    std::size_t sample_count = 0;
};

CcdfCurve ccdf_from_samples(std::span<const double> papr_db, std::span<const double> thresholds_db);

CcdfCurve run_ccdf(const ExperimentConfig& config, unsigned workers = 0);

/// Threshold (dB) at which the curve falls to `target`, linearly interpolated
/// between the bracketing grid points. Throws Refusal when target <
/// 1/sample_count and InvalidInput when the grid does not bracket the target.
double ccdf_crossing(const CcdfCurve& curve, double target);

struct ConvergenceStat {
    /// Mean over runs of the best PAPR (dB) after iteration t+1.
    std::vector<double> mean_best_db;
    std::size_t run_count = 0;
};

/// Repeats the optimizer `run_count` times on one fixed symbol (drawn from
/// substream(master_seed, stream::kConvergenceSymbol)); run r uses
/// substream(master_seed, stream::kConvergenceRunBase + r).
ConvergenceStat run_convergence(const ExperimentConfig& config, std::size_t run_count, unsigned workers = 0);

struct ComparisonRow {
    std::string optimizer;
    /// Mean objective evaluations per symbol.
    double evaluations = 0.0;
    double papr_db = 0.0;
};

ComparisonRow summarize(const ExperimentConfig& config, std::span<const SymbolOutcome> outcomes, double target);

std::vector<ComparisonRow> run_compare(std::span<const ExperimentConfig> configs, double target,
                                       unsigned workers = 0);

struct OracleEntry {
    std::uint64_t seed = 0;
    double optimum = 0.0;    // brute force, linear PAPR
    double exhaustive = 0.0; // library exhaustive search, linear PAPR
    bool exhaustive_matches = false;
    bool heuristics_bounded = false;
    bool passed() const noexcept { return exhaustive_matches && heuristics_bounded; }
};

struct OracleReport {
    int n = 0;
    int m = 0;
    int w = 0;
    std::vector<OracleEntry> entries;
    std::size_t pass_count() const noexcept;
    bool all_passed() const noexcept { return pass_count() == entries.size(); }
};

/// Brute-force minimum of the PAPR objective over all W^{M−1} fixed-first
/// vectors, computed by direct O(N·NL) summation of every candidate's
/// combined spectrum. Shares no code with the transform or the searches.
double brute_force_optimum(std::span<const cplx> spectrum, std::span<const int> assignment, int m, int w,
                           int oversampling);

/// For each seed: draws a QPSK symbol and a random partition, checks the
/// exhaustive search against brute_force_optimum and that IPTS, RS, GD and
/// ABC never beat it. Requires W^{M−1} <= 4096.
OracleReport oracle_check(int n, int m, int w, std::span<const std::uint64_t> seeds,
                          int oversampling = kDefaultOversampling);

} // namespace papr
