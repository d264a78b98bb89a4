#include "papr_pts/errors.hpp"
#include "papr_pts/optimizers.hpp"

#include <cmath>
#include <numbers>

namespace papr {

std::optional<int> quantize_phase(cplx z, const PhaseSet& set)
{
    if (z == cplx{0.0, 0.0}) {
        return std::nullopt;
    }
    const int w = set.w();
    const double sector = std::atan2(z.imag(), z.real()) * w / (2.0 * std::numbers::pi);
    const auto nearest = static_cast<long long>(std::floor(sector + 0.5));
    return static_cast<int>(((nearest % w) + w) % w);
}

int perturb_coordinate(int own_exponent, int partner_exponent, double phi, const PhaseSet& set)
{
    const cplx own = set[own_exponent];
    const cplx moved = own + phi * (own - set[partner_exponent]);
    return quantize_phase(moved, set).value_or(own_exponent);
}

PhaseVector neighbor_candidate(std::span<const FoodSource> sources, std::size_t i, std::size_t k, Rng& rng,
                               const PhaseSet& set, bool fix_first, Perturbation perturbation)
{
    if (i >= sources.size() || k >= sources.size()) {
        throw InvalidInput("neighbor_candidate: source index out of range");
    }
    if (i == k) {
        throw InvalidInput("neighbor_candidate: partner must differ from the source");
    }
    const PhaseVector& own = sources[i].b;
    const PhaseVector& partner = sources[k].b;
    if (own.m() != partner.m()) {
        throw InvalidInput("neighbor_candidate: phase vectors differ in length");
    }

    PhaseVector candidate = own;
    const int first = fix_first ? 1 : 0;
    if (first >= own.m()) {
        return candidate;
    }
    std::uniform_real_distribution<double> pick_phi(-1.0, 1.0);
    if (perturbation == Perturbation::AllCoordinates) {
        for (auto l = static_cast<std::size_t>(first); l < own.exponents.size(); ++l) {
            candidate.exponents[l] = perturb_coordinate(own.exponents[l], partner.exponents[l], pick_phi(rng), set);
        }
        return candidate;
    }
    std::uniform_int_distribution<int> pick_coordinate(first, own.m() - 1);
    const auto l = static_cast<std::size_t>(pick_coordinate(rng));
    const double phi = pick_phi(rng);
    candidate.exponents[l] = perturb_coordinate(own.exponents[l], partner.exponents[l], phi, set);
    return candidate;
}

std::size_t roulette_select(std::span<const FoodSource> sources, Rng& rng)
{
    if (sources.empty()) {
        throw InvalidInput("roulette_select: empty population");
    }
    double total = 0.0;
    for (const auto& s : sources) {
        if (!(s.fitness > 0.0)) {
            throw InvalidInput("roulette_select: fitness values must be positive");
        }
        total += s.fitness;
    }
    std::uniform_real_distribution<double> spin(0.0, total);
    const double r = spin(rng);
    double cumulative = 0.0;
    for (std::size_t i = 0; i < sources.size(); ++i) {
        cumulative += sources[i].fitness;
        if (r < cumulative) {
            return i;
        }
    }
    return sources.size() - 1;
}

FoodSource scout_replace(const FoodSource& source, PaprObjective& objective, Rng& rng, bool fix_first)
{
    FoodSource fresh;
    fresh.b = random_phase_vector(source.b.m(), objective.phase_set(), fix_first, rng);
    fresh.f_value = objective.evaluate(fresh.b, fresh.signal);
    fresh.fitness = fitness(fresh.f_value);
    fresh.trial = 0;
    return fresh;
}

} // namespace papr
