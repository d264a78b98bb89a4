#pragma once

#include <cstdint>
#include <random>

namespace papr {

using Rng = std::mt19937_64;

/// SplitMix64 finalizer.
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept
{
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

/// Stream identifiers reserved outside the per-symbol range [0, 2^62).
namespace stream {
inline constexpr std::uint64_t kPartition = (1ull << 63) | 1ull;
inline constexpr std::uint64_t kConvergenceSymbol = (1ull << 63) | 2ull;
inline constexpr std::uint64_t kOracleBase = 1ull << 62;
inline constexpr std::uint64_t kConvergenceRunBase = (1ull << 62) | (1ull << 61);
} // namespace stream

/// Independent generator for (master_seed, stream_id).
///
/// The engine seed is splitmix64(splitmix64(master_seed) ^ splitmix64(stream_id ^ kStreamSalt)),
/// a pure function of the pair, so a stream can be recreated by any worker
/// in any order.
inline constexpr std::uint64_t kStreamSalt = 0xD1B54A32D192ED03ull;

Rng substream(std::uint64_t master_seed, std::uint64_t stream_id);

} // namespace papr
