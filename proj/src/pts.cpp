#include "papr_pts/pts.hpp"

#include "papr_pts/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace papr {

std::string_view to_string(PartitionScheme scheme) noexcept
{
    switch (scheme) {
    case PartitionScheme::Random:
        return "random";
    case PartitionScheme::Adjacent:
        return "adjacent";
    case PartitionScheme::Interleaved:
        return "interleaved";
    }
    return "unknown";
}

Partition::Partition(std::vector<int> assignment, int m, PartitionScheme scheme)
    : assignment_(std::move(assignment)), m_(m), scheme_(scheme)
{
    if (m_ < 1 || static_cast<std::size_t>(m_) > assignment_.size()) {
        throw InvalidInput("Partition: need 1 <= M <= N");
    }
    std::vector<bool> used(static_cast<std::size_t>(m_), false);
    for (int id : assignment_) {
        if (id < 0 || id >= m_) {
            throw InvalidInput("Partition: subblock id " + std::to_string(id) + " outside [0, M)");
        }
        used[static_cast<std::size_t>(id)] = true;
    }
    if (std::find(used.begin(), used.end(), false) != used.end()) {
        throw InvalidInput("Partition: every subblock must own at least one subcarrier");
    }
}

Partition make_partition(int n, int m, PartitionScheme scheme, Rng& rng)
{
    if (m < 1 || n < 1 || m > n) {
        throw InvalidInput("make_partition: need 1 <= m <= n, got n=" + std::to_string(n) +
                           " m=" + std::to_string(m));
    }
    std::vector<int> assignment(static_cast<std::size_t>(n));
    switch (scheme) {
    case PartitionScheme::Interleaved:
        for (int i = 0; i < n; ++i) {
            assignment[static_cast<std::size_t>(i)] = i % m;
        }
        break;
    case PartitionScheme::Adjacent:
        for (int i = 0; i < n; ++i) {
            assignment[static_cast<std::size_t>(i)] =
                static_cast<int>(static_cast<long long>(i) * m / n);
        }
        break;
    case PartitionScheme::Random: {
        std::uniform_int_distribution<int> pick(0, m - 1);
        std::vector<int> counts(static_cast<std::size_t>(m));
        do {
            std::fill(counts.begin(), counts.end(), 0);
            for (auto& id : assignment) {
                id = pick(rng);
                ++counts[static_cast<std::size_t>(id)];
            }
        } while (std::find(counts.begin(), counts.end(), 0) != counts.end());
        break;
    }
    }
    return Partition(std::move(assignment), m, scheme);
}

PhaseSet::PhaseSet(int w)
{
    if (w < 2) {
        throw InvalidInput("PhaseSet: W must be >= 2");
    }
    elements_.reserve(static_cast<std::size_t>(w));
    for (int l = 0; l < w; ++l) {
        if ((4 * l) % w == 0) {
            constexpr cplx axes[] = {{1.0, 0.0}, {0.0, 1.0}, {-1.0, 0.0}, {0.0, -1.0}};
            elements_.push_back(axes[(4 * l) / w]);
        } else {
            elements_.push_back(std::polar(1.0, 2.0 * std::numbers::pi * l / w));
        }
    }
}

CVec PhaseVector::factors(const PhaseSet& set) const
{
    CVec out(exponents.size());
    for (std::size_t i = 0; i < exponents.size(); ++i) {
        if (exponents[i] < 0 || exponents[i] >= set.w()) {
            throw InvalidInput("PhaseVector: exponent outside the phase set");
        }
        out[i] = set[exponents[i]];
    }
    return out;
}

PhaseVector random_phase_vector(int m, const PhaseSet& set, bool fix_first, Rng& rng)
{
    std::uniform_int_distribution<int> pick(0, set.w() - 1);
    PhaseVector b{std::vector<int>(static_cast<std::size_t>(m))};
    for (std::size_t i = 0; i < b.exponents.size(); ++i) {
        b.exponents[i] = (i == 0 && fix_first) ? 0 : pick(rng);
    }
    return b;
}

SubblockSignals::SubblockSignals(std::vector<CVec> signals, int n, int oversampling)
    : signals_(std::move(signals)), n_(n), oversampling_(oversampling)
{
    if (n_ < 1 || oversampling_ < 1 || signals_.empty()) {
        throw InvalidInput("SubblockSignals: need N >= 1, L >= 1 and at least one subblock");
    }
    for (const auto& s : signals_) {
        if (s.size() != length()) {
            throw InvalidInput("SubblockSignals: every subblock signal must have N·L samples");
        }
    }
}

SubblockSignals split_and_transform(const OfdmBlock& block, const Partition& partition, int oversampling)
{
    if (partition.n() != block.n()) {
        throw InvalidInput("split_and_transform: partition covers " + std::to_string(partition.n()) +
                           " subcarriers, block has " + std::to_string(block.n()));
    }
    const auto symbols = block.symbols();
    const auto assignment = partition.assignment();
    const std::size_t length = symbols.size() * static_cast<std::size_t>(std::max(oversampling, 1));

    std::vector<CVec> signals;
    signals.reserve(static_cast<std::size_t>(partition.m()));
    CVec masked(symbols.size());
    for (int m = 0; m < partition.m(); ++m) {
        for (std::size_t i = 0; i < symbols.size(); ++i) {
            masked[i] = assignment[i] == m ? symbols[i] : cplx{0.0, 0.0};
        }
        CVec& out = signals.emplace_back(length);
        oversampled_idft_into(masked, oversampling, out);
    }
    return SubblockSignals(std::move(signals), block.n(), oversampling);
}

void combine_into(const SubblockSignals& subblocks, std::span<const cplx> factors, std::span<cplx> out)
{
    if (static_cast<int>(factors.size()) != subblocks.m()) {
        throw InvalidInput("combine: expected " + std::to_string(subblocks.m()) + " phase factors, got " +
                           std::to_string(factors.size()));
    }
    if (out.size() != subblocks.length()) {
        throw InvalidInput("combine: output buffer has the wrong length");
    }
    std::fill(out.begin(), out.end(), cplx{0.0, 0.0});
    const std::size_t len = out.size();
    for (int m = 0; m < subblocks.m(); ++m) {
        const double fr = factors[static_cast<std::size_t>(m)].real();
        const double fi = factors[static_cast<std::size_t>(m)].imag();
        const auto x = subblocks[m];
        for (std::size_t k = 0; k < len; ++k) {
            const double xr = x[k].real();
            const double xi = x[k].imag();
            out[k] = {out[k].real() + (fr * xr - fi * xi), out[k].imag() + (fr * xi + fi * xr)};
        }
    }
}

void combine_signs_into(const SubblockSignals& subblocks, std::span<const int> negate, std::span<cplx> out)
{
    if (static_cast<int>(negate.size()) != subblocks.m() || out.size() != subblocks.length()) {
        throw InvalidInput("combine: dimension mismatch");
    }
    std::fill(out.begin(), out.end(), cplx{0.0, 0.0});
    for (int m = 0; m < subblocks.m(); ++m) {
        const auto x = subblocks[m];
        if (negate[static_cast<std::size_t>(m)] != 0) {
            for (std::size_t k = 0; k < out.size(); ++k) {
                out[k] -= x[k];
            }
        } else {
            for (std::size_t k = 0; k < out.size(); ++k) {
                out[k] += x[k];
            }
        }
    }
}

TimeSignal combine(const SubblockSignals& subblocks, std::span<const cplx> factors)
{
    CVec out(subblocks.length());
    combine_into(subblocks, factors, out);
    return TimeSignal(std::move(out), subblocks.oversampling());
}

TimeSignal combine(const SubblockSignals& subblocks, const PhaseVector& b, const PhaseSet& set)
{
    return combine(subblocks, b.factors(set));
}

double objective(const SubblockSignals& subblocks, std::span<const cplx> factors)
{
    CVec out(subblocks.length());
    combine_into(subblocks, factors, out);
    return papr(out);
}

double objective(const SubblockSignals& subblocks, const PhaseVector& b, const PhaseSet& set)
{
    return objective(subblocks, b.factors(set));
}

double fitness(double f_value)
{
    if (!(f_value >= 0.0)) {
        throw InvalidInput("fitness: objective value must be non-negative");
    }
    return 1.0 / (1.0 + f_value);
}

} // namespace papr
