#include "papr_pts/errors.hpp"
#include "papr_pts/optimizers.hpp"

#include <algorithm>

namespace papr {

OptimizerReport abc_pts(PaprObjective& objective, const AbcConfig& config, Rng& rng)
{
    if (config.population < 2) {
        throw InvalidInput("abc_pts: population size S must be >= 2");
    }
    if (config.max_iterations < 1) {
        throw InvalidInput("abc_pts: iteration count K must be >= 1");
    }
    if (config.limit < 1) {
        throw InvalidInput("abc_pts: limit must be >= 1");
    }

    const std::size_t first_call = objective.calls();
    const PhaseSet& set = objective.phase_set();
    const int m = objective.m();
    const auto population = static_cast<std::size_t>(config.population);

    // Source 0 is the identity so the search never ends above the unmodified signal.
    std::vector<FoodSource> sources(population);
    for (std::size_t i = 0; i < population; ++i) {
        FoodSource& s = sources[i];
        s.b = i == 0 ? PhaseVector::identity(m) : random_phase_vector(m, set, config.fix_first, rng);
        s.f_value = objective.evaluate(s.b, s.signal);
        s.fitness = fitness(s.f_value);
    }
    Incumbent best(sources[0].b, sources[0].f_value, sources[0].signal);
    for (std::size_t i = 1; i < population; ++i) {
        best.offer_exact(sources[i].b, sources[i].f_value, sources[i].signal);
    }

    std::uniform_int_distribution<std::size_t> pick_partner(0, population - 2);
    CVec candidate_signal;
    std::vector<Change> changes;

    auto exploit = [&](std::size_t i) {
        std::size_t k = pick_partner(rng);
        if (k >= i) {
            ++k;
        }
        PhaseVector candidate = neighbor_candidate(sources, i, k, rng, set, config.fix_first, config.perturbation);
        FoodSource& source = sources[i];
        changes.clear();
        for (int l = 0; l < m; ++l) {
            const auto idx = static_cast<std::size_t>(l);
            if (candidate.exponents[idx] != source.b.exponents[idx]) {
                changes.push_back(Change{l, source.b.exponents[idx], candidate.exponents[idx]});
            }
        }
        if (changes.empty()) {
            ++source.trial;
            return;
        }
        const double f_value = objective.evaluate_change(source.signal, changes, candidate_signal);
        const double candidate_fitness = fitness(f_value);
        if (candidate_fitness > source.fitness) {
            source.b = std::move(candidate);
            source.f_value = f_value;
            source.fitness = candidate_fitness;
            source.trial = 0;
            std::swap(source.signal, candidate_signal);
            best.offer(source.b, source.f_value, objective);
        } else {
            ++source.trial;
        }
    };

    OptimizerReport report;
    report.trajectory.reserve(static_cast<std::size_t>(config.max_iterations));
    for (int iteration = 0; iteration < config.max_iterations; ++iteration) {
        // Employed bees.
        for (std::size_t i = 0; i < population; ++i) {
            exploit(i);
        }
        // Onlookers.
        for (std::size_t j = 0; j < population; ++j) {
            exploit(roulette_select(sources, rng));
        }
        // At most one scout per cycle.
        const auto exhausted = std::max_element(sources.begin(), sources.end(),
                                                [](const FoodSource& a, const FoodSource& b) { return a.trial < b.trial; });
        if (exhausted->trial > config.limit) {
            *exhausted = scout_replace(*exhausted, objective, rng, config.fix_first);
            best.offer_exact(exhausted->b, exhausted->f_value, exhausted->signal);
        }
        report.trajectory.push_back(best.f_value());
    }

    report.best_b = best.b();
    report.best_papr_db = papr_db(best.f_value());
    report.evaluations = objective.calls() - first_call;
    return report;
}

OptimizerReport abc_pts(const SubblockSignals& subblocks, const PhaseSet& set, const AbcConfig& config, Rng& rng)
{
    PaprObjective objective(subblocks, set);
    return abc_pts(objective, config, rng);
}

} // namespace papr
