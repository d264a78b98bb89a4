#pragma once

#include "papr_pts/pts.hpp"
#include "papr_pts/random.hpp"
#include "papr_pts/signal.hpp"

#include <cmath>
#include <numbers>
#include <vector>

namespace papr::testing {

// Straight O(N·LN) evaluation of the oversampled IDFT.
inline CVec direct_idft(std::span<const cplx> spectrum, int oversampling)
{
    const std::size_t n = spectrum.size();
    const std::size_t len = n * static_cast<std::size_t>(oversampling);
    CVec out(len);
    for (std::size_t k = 0; k < len; ++k) {
        cplx acc{0.0, 0.0};
        for (std::size_t i = 0; i < n; ++i) {
            const double angle = 2.0 * std::numbers::pi * static_cast<double>((i * k) % len) / static_cast<double>(len);
            acc += spectrum[i] * std::polar(1.0, angle);
        }
        out[k] = acc / std::sqrt(static_cast<double>(n));
    }
    return out;
}

inline OfdmBlock random_block(int n, Modulation modulation, Rng& rng)
{
    const Constellation constellation = Constellation::make(modulation);
    std::uniform_int_distribution<int> pick(0, static_cast<int>(constellation.size()) - 1);
    std::vector<int> indices(static_cast<std::size_t>(n));
    for (int& idx : indices) {
        idx = pick(rng);
    }
    return map_symbols(indices, constellation);
}

struct Instance {
    OfdmBlock block;
    Partition partition;
    SubblockSignals subblocks;
};

inline Instance random_instance(int n, int m, std::uint64_t seed, Modulation modulation = Modulation::Qpsk,
                                int oversampling = kDefaultOversampling)
{
    Rng rng(seed);
    OfdmBlock block = random_block(n, modulation, rng);
    Partition partition = make_partition(n, m, PartitionScheme::Random, rng);
    SubblockSignals subblocks = split_and_transform(block, partition, oversampling);
    return {std::move(block), std::move(partition), std::move(subblocks)};
}

inline double relative_error(std::span<const cplx> a, std::span<const cplx> b)
{
    double diff = 0.0;
    double ref = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        diff += std::norm(a[k] - b[k]);
        ref += std::norm(b[k]);
    }
    return std::sqrt(diff / ref);
}

} // namespace papr::testing
