#include "papr_pts/random.hpp"

namespace papr {

Rng substream(std::uint64_t master_seed, std::uint64_t stream_id)
{
    return Rng(splitmix64(splitmix64(master_seed) ^ splitmix64(stream_id ^ kStreamSalt)));
}

} // namespace papr
