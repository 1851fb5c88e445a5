#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>

#include "erosim/rng.hpp"
#include "erosim/trajectory.hpp"

namespace erosim {

struct WalkResult {
    std::int64_t pos;
    std::uint64_t steps;
    bool absorbed;
};

// Simple random walk from pos, absorbed at -A or +B, for at most `budget`
// steps. Steps are drawn in chunks no longer than the distance to either
// barrier, which consumes the same bits as stepping one at a time.
// If tr is non-null every step is appended to it (inverted when `invert`).
inline WalkResult walk_exact(Rng& rng, std::int64_t pos, std::int64_t A, std::int64_t B,
                             std::uint64_t budget, Trajectory* tr = nullptr, bool invert = false)
{
    std::uint64_t steps = 0;
    while (steps < budget) {
        std::int64_t d = std::min(pos + A, B - pos);
        int k = static_cast<int>(std::min<std::uint64_t>({static_cast<std::uint64_t>(d), budget - steps, 64}));
        std::uint64_t w = rng.bits(k);
        pos += 2 * std::popcount(w) - k;
        steps += static_cast<std::uint64_t>(k);
        if (tr)
            tr->append(invert ? ~w : w, k);
        if (pos == -A || pos == B)
            return {pos, steps, true};
    }
    return {pos, steps, false};
}

} // namespace erosim
