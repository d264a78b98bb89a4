#include "papr_pts/errors.hpp"
#include "papr_pts/optimizers.hpp"

#include <limits>
#include <string>

namespace papr {

namespace {

Incumbent start_from_identity(PaprObjective& objective)
{
    PhaseVector identity = PhaseVector::identity(objective.m());
    CVec signal;
    const double f_value = objective.evaluate(identity, signal);
    return Incumbent(std::move(identity), f_value, std::move(signal));
}

OptimizerReport finish(const Incumbent& best, const PaprObjective& objective, std::size_t first_call)
{
    OptimizerReport report;
    report.best_b = best.b();
    report.best_papr_db = papr_db(best.f_value());
    report.evaluations = objective.calls() - first_call;
    return report;
}

// Advances `combo` (strictly increasing values below `hi`) to the next
// r-combination in lexicographic order. Returns false after the last one.
bool next_combination(std::vector<int>& combo, int hi)
{
    const int r = static_cast<int>(combo.size());
    int i = r - 1;
    while (i >= 0 && combo[static_cast<std::size_t>(i)] == hi - r + i) {
        --i;
    }
    if (i < 0) {
        return false;
    }
    ++combo[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < r; ++j) {
        combo[static_cast<std::size_t>(j)] = combo[static_cast<std::size_t>(j - 1)] + 1;
    }
    return true;
}

} // namespace

OptimizerReport ipts(PaprObjective& objective, const IptsConfig& config)
{
    const int m = objective.m();
    if (m < 2) {
        throw InvalidInput("ipts: need at least two subblocks");
    }
    const std::size_t first_call = objective.calls();
    const int w = objective.phase_set().w();

    Incumbent best = start_from_identity(objective);
    CVec base_signal;
    CVec candidate_signal;
    for (int coordinate = config.fix_first ? 1 : 0; coordinate < m; ++coordinate) {
        const PhaseVector base = best.b();
        base_signal.assign(best.signal().begin(), best.signal().end());
        PhaseVector candidate = base;
        for (int exponent = 0; exponent < w; ++exponent) {
            candidate.exponents[static_cast<std::size_t>(coordinate)] = exponent;
            const Change change{coordinate, base.exponents[static_cast<std::size_t>(coordinate)], exponent};
            const double f_value = objective.evaluate_change(base_signal, {&change, 1}, candidate_signal);
            best.offer(candidate, f_value, objective);
        }
    }
    return finish(best, objective, first_call);
}

OptimizerReport random_search(PaprObjective& objective, const RandomSearchConfig& config, Rng& rng)
{
    if (config.trials < 0) {
        throw InvalidInput("random_search: trial count must be non-negative");
    }
    const std::size_t first_call = objective.calls();
    Incumbent best = start_from_identity(objective);
    CVec signal;
    for (int t = 0; t < config.trials; ++t) {
        const PhaseVector b = random_phase_vector(objective.m(), objective.phase_set(), config.fix_first, rng);
        const double f_value = objective.evaluate(b, signal);
        best.offer_exact(b, f_value, signal);
    }
    return finish(best, objective, first_call);
}

OptimizerReport gd_search(PaprObjective& objective, const GradientDescentConfig& config)
{
    const int m = objective.m();
    const int first = config.fix_first ? 1 : 0;
    const int free_count = m - first;
    if (config.radius < 1 || config.radius > free_count) {
        throw InvalidInput("gd_search: radius must lie in [1, " + std::to_string(free_count) + "], got " +
                           std::to_string(config.radius));
    }
    if (config.iterations < 0) {
        throw InvalidInput("gd_search: iteration count must be non-negative");
    }
    const std::size_t first_call = objective.calls();
    const int w = objective.phase_set().w();
    const auto r = static_cast<std::size_t>(config.radius);

    Incumbent current = start_from_identity(objective);
    std::vector<double> trajectory;
    CVec base_signal;
    CVec candidate_signal;
    std::vector<Change> changes(r);
    std::vector<int> digits(r);

    for (int round = 0; round < config.iterations; ++round) {
        const PhaseVector base = current.b();
        base_signal.assign(current.signal().begin(), current.signal().end());
        Incumbent round_best = current;
        bool improved = false;

        std::vector<int> combo(r);
        for (std::size_t i = 0; i < r; ++i) {
            combo[i] = first + static_cast<int>(i);
        }
        do {
            std::fill(digits.begin(), digits.end(), 0);
            while (true) {
                PhaseVector candidate = base;
                for (std::size_t i = 0; i < r; ++i) {
                    const auto c = static_cast<std::size_t>(combo[i]);
                    changes[i] = Change{combo[i], base.exponents[c], digits[i]};
                    candidate.exponents[c] = digits[i];
                }
                const double f_value = objective.evaluate_change(base_signal, changes, candidate_signal);
                improved |= round_best.offer(candidate, f_value, objective);

                std::size_t pos = 0;
                while (pos < r && ++digits[pos] == w) {
                    digits[pos] = 0;
                    ++pos;
                }
                if (pos == r) {
                    break;
                }
            }
        } while (next_combination(combo, m));

        if (!improved) {
            break;
        }
        current = std::move(round_best);
        trajectory.push_back(current.f_value());
    }
    while (trajectory.size() < static_cast<std::size_t>(config.iterations)) {
        trajectory.push_back(current.f_value());
    }

    OptimizerReport report = finish(current, objective, first_call);
    report.trajectory = std::move(trajectory);
    return report;
}

std::optional<std::uint64_t> exhaustive_size(int m, int w)
{
    if (m < 1 || w < 1) {
        return std::nullopt;
    }
    std::uint64_t count = 1;
    for (int i = 1; i < m; ++i) {
        if (count > std::numeric_limits<std::uint64_t>::max() / static_cast<std::uint64_t>(w)) {
            return std::nullopt;
        }
        count *= static_cast<std::uint64_t>(w);
    }
    return count;
}

OptimizerReport exhaustive(PaprObjective& objective, const ExhaustiveConfig& config)
{
    const int m = objective.m();
    const int w = objective.phase_set().w();
    const auto size = exhaustive_size(m, w);
    if (!size || *size > config.cap) {
        throw Refusal("exhaustive: W^(M-1) = " + std::to_string(w) + "^" + std::to_string(m - 1) +
                      " candidates exceeds the cap of " + std::to_string(config.cap));
    }
    constexpr std::uint64_t kResyncInterval = 4096;
    const std::size_t first_call = objective.calls();

    Incumbent best = start_from_identity(objective);
    PhaseVector current = best.b();
    CVec signal(best.signal().begin(), best.signal().end());
    CVec next_signal;

    // Reflected W-ary Gray code over coordinates 1..M-1.
    const auto digits = static_cast<std::size_t>(m - 1);
    std::vector<int> direction(digits, +1);
    for (std::uint64_t visited = 1;; ++visited) {
        std::size_t j = 0;
        while (j < digits) {
            const int value = current.exponents[j + 1];
            if ((direction[j] > 0 && value == w - 1) || (direction[j] < 0 && value == 0)) {
                direction[j] = -direction[j];
                ++j;
                continue;
            }
            break;
        }
        if (j == digits) {
            break;
        }
        const int coordinate = static_cast<int>(j + 1);
        const int from = current.exponents[j + 1];
        const int to = from + direction[j];
        current.exponents[j + 1] = to;
        const Change change{coordinate, from, to};
        const double f_value = objective.evaluate_change(signal, {&change, 1}, next_signal);
        std::swap(signal, next_signal);
        best.offer(current, f_value, objective);
        if (visited % kResyncInterval == 0) {
            objective.reference(current, signal);
        }
    }
    return finish(best, objective, first_call);
}

} // namespace papr
