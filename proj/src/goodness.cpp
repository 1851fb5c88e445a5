#include "erosim/goodness.hpp"

namespace erosim {

GoodnessLabel goodness_label(const SiteColoring& coloring, Color walker)
{
    Color opp = opposite(walker);
    Side s = Side::East;
    if (coloring.adjacent(Side::East) == opp && coloring.adjacent(Side::West) != opp)
        s = Side::West;
    GoodnessLabel g;
    g.side = s;
    g.L = (coloring.adjacent(s) == walker ? coloring.adjacent_len(s) : 0) + 1;
    return g;
}

std::uint64_t GoodnessCounters::total() const
{
    std::uint64_t t = 0;
    for (const auto& [L, c] : byL)
        t += c.total();
    return t;
}

void record_goodness(GoodnessCounters& counters, const GoodnessLabel& g, std::uint64_t duration)
{
    counters.slot(g) += duration;
}

} // namespace erosim
