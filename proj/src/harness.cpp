#include "papr_pts/harness.hpp"

#include "papr_pts/errors.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <thread>

namespace papr {

namespace {

// Runs body(i) for i in [0, count) on up to `workers` threads. If any call
// throws, the exception from the lowest index is rethrown.
template <typename Body>
void parallel_for(std::size_t count, unsigned workers, Body&& body)
{
    if (workers == 0) {
        workers = std::max(1u, std::thread::hardware_concurrency());
    }
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, std::max<std::size_t>(count, 1)));

    std::atomic<std::size_t> next{0};
    std::mutex error_mutex;
    std::exception_ptr error;
    std::size_t error_index = std::numeric_limits<std::size_t>::max();

    auto worker = [&] {
        for (std::size_t i = next++; i < count; i = next++) {
            try {
                body(i);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (i < error_index) {
                    error_index = i;
                    error = std::current_exception();
                }
            }
        }
    };

    if (workers == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (unsigned t = 0; t < workers; ++t) {
            pool.emplace_back(worker);
        }
    }
    if (error) {
        std::rethrow_exception(error);
    }
}

OfdmBlock random_block(int n, const Constellation& constellation, Rng& rng)
{
    std::uniform_int_distribution<int> pick(0, static_cast<int>(constellation.size()) - 1);
    std::vector<int> indices(static_cast<std::size_t>(n));
    for (auto& idx : indices) {
        idx = pick(rng);
    }
    return map_symbols(indices, constellation);
}

std::optional<Partition> shared_partition(const ExperimentConfig& config)
{
    if (config.optimizer == OptimizerKind::None || config.per_symbol_partition) {
        return std::nullopt;
    }
    Rng rng = substream(config.master_seed, stream::kPartition);
    return make_partition(config.n, config.m, config.partition, rng);
}

SubblockSignals symbol_subblocks(const ExperimentConfig& config, const OfdmBlock& block,
                                 const std::optional<Partition>& shared, Rng& rng)
{
    if (shared) {
        return split_and_transform(block, *shared, config.oversampling);
    }
    const Partition own = make_partition(config.n, config.m, config.partition, rng);
    return split_and_transform(block, own, config.oversampling);
}

} // namespace

std::string_view to_string(OptimizerKind kind) noexcept
{
    switch (kind) {
    case OptimizerKind::None:
        return "none";
    case OptimizerKind::Abc:
        return "abc";
    case OptimizerKind::Ipts:
        return "ipts";
    case OptimizerKind::RandomSearch:
        return "rs";
    case OptimizerKind::GradientDescent:
        return "gd";
    case OptimizerKind::Exhaustive:
        return "opts";
    }
    return "unknown";
}

std::optional<OptimizerKind> parse_optimizer(std::string_view name) noexcept
{
    for (auto kind : {OptimizerKind::None, OptimizerKind::Abc, OptimizerKind::Ipts, OptimizerKind::RandomSearch,
                      OptimizerKind::GradientDescent, OptimizerKind::Exhaustive}) {
        if (to_string(kind) == name) {
            return kind;
        }
    }
    return std::nullopt;
}

bool has_trajectory(OptimizerKind kind) noexcept
{
    return kind == OptimizerKind::Abc || kind == OptimizerKind::GradientDescent;
}

std::vector<double> threshold_grid(double first, double last, double step)
{
    if (!(step > 0.0) || !(last >= first) || !std::isfinite(first) || !std::isfinite(last)) {
        throw InvalidInput("threshold grid: need first <= last and a positive step");
    }
    const auto count = static_cast<std::size_t>(std::llround((last - first) / step)) + 1;
    std::vector<double> grid(count);
    for (std::size_t i = 0; i < count; ++i) {
        grid[i] = first + static_cast<double>(i) * step;
    }
    return grid;
}

std::vector<double> default_threshold_grid()
{
    return threshold_grid(5.0, 13.0, 0.05);
}

void ExperimentConfig::validate() const
{
    if (n < 1 || (n & (n - 1)) != 0) {
        throw InvalidInput("n must be a positive power of two");
    }
    if (m < 1 || m > n) {
        throw InvalidInput("m must satisfy 1 <= m <= n");
    }
    if (oversampling < 1) {
        throw InvalidInput("l must be >= 1");
    }
    if (w < 2) {
        throw InvalidInput("w must be >= 2");
    }
    if (symbol_count < 1) {
        throw InvalidInput("symbol count must be >= 1");
    }
    if (thresholds_db.empty()) {
        throw InvalidInput("threshold grid must not be empty");
    }
    for (std::size_t i = 1; i < thresholds_db.size(); ++i) {
        if (!(thresholds_db[i] > thresholds_db[i - 1])) {
            throw InvalidInput("threshold grid must be strictly ascending");
        }
    }
    const int free_count = fix_first ? m - 1 : m;
    switch (optimizer) {
    case OptimizerKind::Abc:
        if (abc.population < 2 || abc.limit < 1 || abc.max_iterations < 1) {
            throw InvalidInput("abc needs s >= 2, limit >= 1, k >= 1");
        }
        break;
    case OptimizerKind::Ipts:
        if (m < 2) {
            throw InvalidInput("ipts needs m >= 2");
        }
        break;
    case OptimizerKind::RandomSearch:
        if (rs_trials < 0) {
            throw InvalidInput("rs needs trials >= 0");
        }
        break;
    case OptimizerKind::GradientDescent:
        if (gd_radius < 1 || gd_radius > free_count || gd_iterations < 0) {
            throw InvalidInput("gd needs 1 <= r <= number of free phase factors and iters >= 0");
        }
        break;
    case OptimizerKind::None:
    case OptimizerKind::Exhaustive:
        break;
    }
}

OptimizerReport run_optimizer(const ExperimentConfig& config, const SubblockSignals& subblocks, Rng& rng)
{
    const PhaseSet set(config.w);
    PaprObjective objective(subblocks, set);
    switch (config.optimizer) {
    case OptimizerKind::None: {
        OptimizerReport report;
        report.best_b = PhaseVector::identity(subblocks.m());
        report.best_papr_db = papr_db(objective.evaluate(report.best_b));
        report.evaluations = objective.calls();
        return report;
    }
    case OptimizerKind::Abc: {
        AbcConfig abc = config.abc;
        abc.fix_first = config.fix_first;
        return abc_pts(objective, abc, rng);
    }
    case OptimizerKind::Ipts:
        return ipts(objective, IptsConfig{config.fix_first});
    case OptimizerKind::RandomSearch:
        return random_search(objective, RandomSearchConfig{config.rs_trials, config.fix_first}, rng);
    case OptimizerKind::GradientDescent:
        return gd_search(objective, GradientDescentConfig{config.gd_radius, config.gd_iterations, config.fix_first});
    case OptimizerKind::Exhaustive:
        return exhaustive(objective, ExhaustiveConfig{config.exhaustive_cap});
    }
    throw InvalidInput("unknown optimizer");
}

std::vector<SymbolOutcome> run_symbols(const ExperimentConfig& config, unsigned workers)
{
    config.validate();
    if (config.optimizer == OptimizerKind::Exhaustive) {
        const auto size = exhaustive_size(config.m, config.w);
        if (!size || *size > config.exhaustive_cap) {
            throw Refusal("exhaustive: W^(M-1) candidates exceeds the cap of " +
                          std::to_string(config.exhaustive_cap));
        }
    }
    const Constellation constellation = Constellation::make(config.modulation);
    const std::optional<Partition> shared = shared_partition(config);

    std::vector<SymbolOutcome> outcomes(config.symbol_count);
    parallel_for(config.symbol_count, workers, [&](std::size_t i) {
        Rng rng = substream(config.master_seed, i);
        const OfdmBlock block = random_block(config.n, constellation, rng);
        if (config.optimizer == OptimizerKind::None) {
            outcomes[i] = {papr_db(papr(oversampled_idft(block, config.oversampling))), 1};
            return;
        }
        const SubblockSignals subblocks = symbol_subblocks(config, block, shared, rng);
        const OptimizerReport report = run_optimizer(config, subblocks, rng);
        outcomes[i] = {report.best_papr_db, report.evaluations};
    });
    return outcomes;
}

CcdfCurve ccdf_from_samples(std::span<const double> papr_db, std::span<const double> thresholds_db)
{
    if (papr_db.empty()) {
        throw InvalidInput("ccdf: no samples");
    }
    std::vector<double> sorted(papr_db.begin(), papr_db.end());
    std::sort(sorted.begin(), sorted.end());

    CcdfCurve curve;
    curve.thresholds_db.assign(thresholds_db.begin(), thresholds_db.end());
    curve.sample_count = sorted.size();
    curve.probabilities.reserve(thresholds_db.size());
    for (double t : thresholds_db) {
        const auto above = sorted.end() - std::upper_bound(sorted.begin(), sorted.end(), t);
        curve.probabilities.push_back(static_cast<double>(above) / static_cast<double>(sorted.size()));
    }
    return curve;
}

CcdfCurve run_ccdf(const ExperimentConfig& config, unsigned workers)
{
    const auto outcomes = run_symbols(config, workers);
    std::vector<double> samples(outcomes.size());
    std::transform(outcomes.begin(), outcomes.end(), samples.begin(), [](const SymbolOutcome& o) { return o.papr_db; });
    return ccdf_from_samples(samples, config.thresholds_db);
}

double ccdf_crossing(const CcdfCurve& curve, double target)
{
    if (!(target > 0.0) || target > 1.0) {
        throw InvalidInput("ccdf crossing: target probability must lie in (0, 1]");
    }
    if (curve.sample_count == 0 || target < 1.0 / static_cast<double>(curve.sample_count)) {
        throw Refusal("ccdf crossing: target probability " + std::to_string(target) + " is below 1/" +
                      std::to_string(curve.sample_count) + " (insufficient samples)");
    }
    const auto& t = curve.thresholds_db;
    const auto& p = curve.probabilities;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (p[i] > target) {
            continue;
        }
        if (i == 0) {
            if (p[0] == target) {
                return t[0];
            }
            throw InvalidInput("ccdf crossing: curve is already below the target at the first threshold");
        }
        const double fraction = (p[i - 1] - target) / (p[i - 1] - p[i]);
        return t[i - 1] + fraction * (t[i] - t[i - 1]);
    }
    throw InvalidInput("ccdf crossing: curve stays above the target over the whole threshold grid");
}

ConvergenceStat run_convergence(const ExperimentConfig& config, std::size_t run_count, unsigned workers)
{
    config.validate();
    if (!has_trajectory(config.optimizer)) {
        throw InvalidInput("convergence: optimizer '" + std::string(to_string(config.optimizer)) +
                           "' does not record a trajectory (use abc or gd)");
    }
    if (run_count < 1) {
        throw InvalidInput("convergence: run count must be >= 1");
    }
    const Constellation constellation = Constellation::make(config.modulation);
    Rng symbol_rng = substream(config.master_seed, stream::kConvergenceSymbol);
    const OfdmBlock block = random_block(config.n, constellation, symbol_rng);
    const std::optional<Partition> shared = shared_partition(config);
    const SubblockSignals subblocks = symbol_subblocks(config, block, shared, symbol_rng);

    std::vector<std::vector<double>> trajectories(run_count);
    parallel_for(run_count, workers, [&](std::size_t r) {
        Rng rng = substream(config.master_seed, stream::kConvergenceRunBase + r);
        trajectories[r] = run_optimizer(config, subblocks, rng).trajectory;
    });

    ConvergenceStat stat;
    stat.run_count = run_count;
    stat.mean_best_db.assign(trajectories.front().size(), 0.0);
    for (const auto& trajectory : trajectories) {
        for (std::size_t t = 0; t < trajectory.size(); ++t) {
            stat.mean_best_db[t] += papr_db(trajectory[t]);
        }
    }
    for (auto& v : stat.mean_best_db) {
        v /= static_cast<double>(run_count);
    }
    return stat;
}

ComparisonRow summarize(const ExperimentConfig& config, std::span<const SymbolOutcome> outcomes, double target)
{
    std::vector<double> samples;
    samples.reserve(outcomes.size());
    double evaluations = 0.0;
    for (const auto& o : outcomes) {
        samples.push_back(o.papr_db);
        evaluations += static_cast<double>(o.evaluations);
    }
    const CcdfCurve curve = ccdf_from_samples(samples, config.thresholds_db);
    return {std::string(to_string(config.optimizer)), evaluations / static_cast<double>(outcomes.size()),
            ccdf_crossing(curve, target)};
}

std::vector<ComparisonRow> run_compare(std::span<const ExperimentConfig> configs, double target, unsigned workers)
{
    if (configs.empty()) {
        throw InvalidInput("compare: no optimizers given");
    }
    const ExperimentConfig& ref = configs.front();
    for (const auto& c : configs) {
        if (c.n != ref.n || c.modulation != ref.modulation || c.oversampling != ref.oversampling || c.m != ref.m ||
            c.w != ref.w || c.partition != ref.partition || c.per_symbol_partition != ref.per_symbol_partition ||
            c.symbol_count != ref.symbol_count || c.master_seed != ref.master_seed ||
            c.thresholds_db != ref.thresholds_db) {
            throw InvalidInput("compare: all configurations must share model parameters and seed");
        }
    }
    if (target < 1.0 / static_cast<double>(ref.symbol_count)) {
        throw Refusal("compare: target probability is below 1/symbol_count (insufficient samples)");
    }
    std::vector<ComparisonRow> rows;
    rows.reserve(configs.size());
    for (const auto& c : configs) {
        const auto outcomes = run_symbols(c, workers);
        rows.push_back(summarize(c, outcomes, target));
    }
    return rows;
}

} // namespace papr
