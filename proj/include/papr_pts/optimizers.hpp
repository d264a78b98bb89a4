#pragma once

#include "papr_pts/objective.hpp"
#include "papr_pts/pts.hpp"
#include "papr_pts/random.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace papr {

struct OptimizerReport {
    PhaseVector best_b;
    /// papr_db(objective(best_b)), from a from-scratch evaluation.
    double best_papr_db = 0.0;
    /// Counted objective calls made by the search.
    std::size_t evaluations = 0;
    /// Best f_value (linear) after each iteration; empty for non-iterative searches.
    std::vector<double> trajectory;
};

// --- ABC-PTS building blocks -------------------------------------------------

struct FoodSource {
    PhaseVector b;
    double f_value = 0.0;
    double fitness = 0.0;
    int trial = 0;
    /// Combined time signal for b, the base for incremental neighbour evaluation.
    CVec signal;
};

/// Exponent of the phase-set element nearest in angle to z.
///
/// Decision sectors have width 2π/W, are centred on each element and closed
/// at their lower edge (for W=4: [π/4, 3π/4) → j, ..., [7π/4, π/4) → 1).
/// Returns nullopt for z == 0.
std::optional<int> quantize_phase(cplx z, const PhaseSet& set);

/// One coordinate of the neighbour move followed by quantization:
/// b' = own + φ(own − partner). Keeps `own_exponent` when b' == 0.
int perturb_coordinate(int own_exponent, int partner_exponent, double phi, const PhaseSet& set);

/// Which coordinates one neighbour move rewrites.
enum class Perturbation {
    /// Every free coordinate l, each with its own φ_l.
    AllCoordinates,
    /// A single free coordinate drawn uniformly.
    SingleCoordinate,
};

/// Candidate from sources[i] with partner sources[k], φ ~ U[−1, 1] per
/// perturbed coordinate. Coordinate 0 is never touched when fix_first.
PhaseVector neighbor_candidate(std::span<const FoodSource> sources, std::size_t i, std::size_t k, Rng& rng,
                               const PhaseSet& set, bool fix_first,
                               Perturbation perturbation = Perturbation::AllCoordinates);

/// Index drawn with probability fitness_i / Σ fitness.
std::size_t roulette_select(std::span<const FoodSource> sources, Rng& rng);

/// Fresh uniformly random source (counted evaluation), trial reset to 0.
FoodSource scout_replace(const FoodSource& source, PaprObjective& objective, Rng& rng, bool fix_first);

struct AbcConfig {
    int population = 30;     // S
    int limit = 5;
    int max_iterations = 30; // K
    bool fix_first = true;
    Perturbation perturbation = Perturbation::AllCoordinates;
};

/// ABC-PTS. Evaluations skip candidates identical to their source: such a
/// candidate cannot be strictly better and only increments the trial counter.
OptimizerReport abc_pts(PaprObjective& objective, const AbcConfig& config, Rng& rng);
OptimizerReport abc_pts(const SubblockSignals& subblocks, const PhaseSet& set, const AbcConfig& config,
                        Rng& rng);

// --- Baselines ---------------------------------------------------------------

struct IptsConfig {
    bool fix_first = true;
};

/// Iterative flipping from the identity: one pass over the free coordinates,
/// each tried at all W values. (M−1)·W + 1 evaluations with fix_first.
OptimizerReport ipts(PaprObjective& objective, const IptsConfig& config);

struct RandomSearchConfig {
    int trials = 900;
    bool fix_first = true;
};

/// Identity plus `trials` i.i.d. uniform vectors; trials + 1 evaluations.
OptimizerReport random_search(PaprObjective& objective, const RandomSearchConfig& config, Rng& rng);

struct GradientDescentConfig {
    int radius = 2;
    int iterations = 3;
    bool fix_first = true;
};

/// Neighbourhood descent of radius r from the identity. Each round evaluates
/// C(F, r)·W^r candidates (F free coordinates) and stops when no candidate
/// strictly improves. trajectory holds the incumbent after each round, padded
/// to `iterations` entries after an early stop.
OptimizerReport gd_search(PaprObjective& objective, const GradientDescentConfig& config);

struct ExhaustiveConfig {
    std::uint64_t cap = std::uint64_t{1} << 20;
};

/// Number of fixed-first vectors, W^{M−1}, or nullopt on overflow.
std::optional<std::uint64_t> exhaustive_size(int m, int w);

/// All W^{M−1} vectors with b_1 = 1, visited in reflected W-ary Gray order so
/// consecutive candidates differ in one coordinate. Throws Refusal when the
/// count exceeds the cap.
OptimizerReport exhaustive(PaprObjective& objective, const ExhaustiveConfig& config);

} // namespace papr
