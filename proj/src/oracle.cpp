#include "papr_pts/errors.hpp"
#include "papr_pts/harness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace papr {

namespace {

constexpr double kMatchTolerance = 1e-9;
constexpr std::uint64_t kOracleCap = 4096;

} // namespace

double brute_force_optimum(std::span<const cplx> spectrum, std::span<const int> assignment, int m, int w,
                           int oversampling)
{
    const std::size_t n = spectrum.size();
    const std::size_t length = n * static_cast<std::size_t>(oversampling);
    if (assignment.size() != n || m < 1 || w < 2 || oversampling < 1) {
        throw InvalidInput("brute_force_optimum: inconsistent dimensions");
    }

    CVec twiddle(length);
    for (std::size_t q = 0; q < length; ++q) {
        twiddle[q] = std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(q) / static_cast<double>(length));
    }
    CVec rotation(static_cast<std::size_t>(w));
    for (int l = 0; l < w; ++l) {
        rotation[static_cast<std::size_t>(l)] = std::polar(1.0, 2.0 * std::numbers::pi * l / w);
    }

    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    std::vector<int> digits(static_cast<std::size_t>(m), 0);
    CVec weighted(n);
    double best = std::numeric_limits<double>::infinity();
    while (true) {
        for (std::size_t i = 0; i < n; ++i) {
            weighted[i] = spectrum[i] * rotation[static_cast<std::size_t>(digits[static_cast<std::size_t>(assignment[i])])];
        }
        double peak = 0.0;
        double total = 0.0;
        for (std::size_t k = 0; k < length; ++k) {
            cplx sum{0.0, 0.0};
            for (std::size_t i = 0; i < n; ++i) {
                sum += weighted[i] * twiddle[(i * k) % length];
            }
            const double power = std::norm(sum * scale);
            peak = std::max(peak, power);
            total += power;
        }
        best = std::min(best, peak * static_cast<double>(length) / total);

        // digits[0] stays 0: the first phase factor is pinned.
        std::size_t pos = 1;
        while (pos < digits.size() && ++digits[pos] == w) {
            digits[pos] = 0;
            ++pos;
        }
        if (pos >= digits.size()) {
            break;
        }
    }
    return best;
}

std::size_t OracleReport::pass_count() const noexcept
{
    return static_cast<std::size_t>(
        std::count_if(entries.begin(), entries.end(), [](const OracleEntry& e) { return e.passed(); }));
}

OracleReport oracle_check(int n, int m, int w, std::span<const std::uint64_t> seeds, int oversampling)
{
    const auto size = exhaustive_size(m, w);
    if (!size || *size > kOracleCap) {
        throw InvalidInput("oracle_check: W^(M-1) must not exceed " + std::to_string(kOracleCap));
    }
    if (n < 1 || (n & (n - 1)) != 0 || m > n || w < 2) {
        throw InvalidInput("oracle_check: need N a power of two, 1 <= M <= N, W >= 2");
    }

    const Constellation constellation = Constellation::qpsk();
    const PhaseSet set(w);
    OracleReport report{n, m, w, {}};
    report.entries.reserve(seeds.size());

    for (std::uint64_t seed : seeds) {
        Rng rng = substream(seed, stream::kOracleBase);
        std::uniform_int_distribution<int> pick(0, static_cast<int>(constellation.size()) - 1);
        std::vector<int> indices(static_cast<std::size_t>(n));
        for (auto& idx : indices) {
            idx = pick(rng);
        }
        const OfdmBlock block = map_symbols(indices, constellation);
        const Partition partition = make_partition(n, m, PartitionScheme::Random, rng);
        const SubblockSignals subblocks = split_and_transform(block, partition, oversampling);

        OracleEntry entry;
        entry.seed = seed;
        entry.optimum = brute_force_optimum(block.symbols(), partition.assignment(), m, w, oversampling);

        PaprObjective objective(subblocks, set);
        const OptimizerReport full = exhaustive(objective, {});
        entry.exhaustive = objective.reference(full.best_b);
        entry.exhaustive_matches = std::abs(entry.exhaustive - entry.optimum) <= kMatchTolerance * entry.optimum;

        const double floor = entry.optimum * (1.0 - kMatchTolerance);
        bool bounded = entry.exhaustive >= floor;
        if (m >= 2) {
            const OptimizerReport by_ipts = ipts(objective, {});
            const double ipts_value = objective.reference(by_ipts.best_b);
            bounded = bounded && ipts_value >= floor;
            if (m == 2) {
                // One free coordinate: IPTS enumerates the whole space.
                bounded = bounded && std::abs(ipts_value - entry.optimum) <= kMatchTolerance * entry.optimum;
            }
            const OptimizerReport by_gd = gd_search(objective, {std::min(2, m - 1), 3, true});
            bounded = bounded && objective.reference(by_gd.best_b) >= floor;
        }
        const OptimizerReport by_rs = random_search(objective, {64, true}, rng);
        bounded = bounded && objective.reference(by_rs.best_b) >= floor;
        const OptimizerReport by_abc = abc_pts(objective, {8, 5, 10, true}, rng);
        bounded = bounded && objective.reference(by_abc.best_b) >= floor;

        entry.heuristics_bounded = bounded;
        report.entries.push_back(entry);
    }
    return report;
}

} // namespace papr
