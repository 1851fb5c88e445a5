#pragma once

#include <cstdint>
#include <map>

#include "erosim/coloring.hpp"

namespace erosim {

// Label of a particle at emission: the same-colored run adjacent to the
// origin on `side` has length L-1.
struct GoodnessLabel {
    Side side = Side::East;
    std::int64_t L = 1;
};

GoodnessLabel goodness_label(const SiteColoring& coloring, Color walker);

struct GoodnessCount {
    std::uint64_t east = 0;
    std::uint64_t west = 0;
    std::uint64_t total() const { return east + west; }
};

struct GoodnessCounters {
    std::map<std::int64_t, GoodnessCount> byL;

    std::uint64_t& slot(const GoodnessLabel& g)
    {
        auto& c = byL[g.L];
        return g.side == Side::East ? c.east : c.west;
    }
    std::uint64_t G(std::int64_t L) const
    {
        auto it = byL.find(L);
        return it == byL.end() ? 0 : it->second.total();
    }
    std::uint64_t total() const;
};

// Advance the counters by `duration` microsteps carrying label g.
void record_goodness(GoodnessCounters& counters, const GoodnessLabel& g, std::uint64_t duration);

} // namespace erosim
