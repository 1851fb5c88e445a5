#include "erosim/stats.hpp"

#include <stdexcept>

namespace erosim {

std::int64_t RunLengthView::tail(const std::vector<std::int64_t>& runs, std::size_t k)
{
    std::int64_t t = 0;
    for (std::size_t j = k == 0 ? 0 : k - 1; j < runs.size(); ++j)
        t += runs[j];
    return t;
}

RunLengthView run_lengths(const SiteColoring& c, std::size_t k)
{
    RunLengthView v;
    v.supportE = c.support(Side::East);
    v.supportW = c.support(Side::West);
    for (Side s : {Side::East, Side::West}) {
        auto& out = s == Side::East ? v.east : v.west;
        for (const Run& r : c.runs(s)) {
            if (out.size() >= k)
                break;
            out.push_back(r.len);
        }
    }
    return v;
}

void update_layers(LayerStack& stack, const MicrostepEvent& ev)
{
    if (ev.kind != MicrostepEvent::Kind::SettledConversion && ev.kind != MicrostepEvent::Kind::SettledExploration)
        throw std::invalid_argument("update_layers: not a settle event");
    stack.update(ev.site > 0 ? Side::East : Side::West, ev.site > 0 ? ev.site : -ev.site, ev.color);
}

} // namespace erosim
