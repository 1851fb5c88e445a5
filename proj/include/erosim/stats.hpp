#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "erosim/coloring.hpp"
#include "erosim/state.hpp"

namespace erosim {

// E(1), E(2), ... and W(1), W(2), ..., outermost first.
struct RunLengthView {
    std::vector<std::int64_t> east;
    std::vector<std::int64_t> west;
    std::int64_t supportE = 0;
    std::int64_t supportW = 0;

    std::int64_t support() const { return supportE + supportW; }
    // S_E(k) = sum_{j >= k} E(j), 1-based.
    static std::int64_t tail(const std::vector<std::int64_t>& runs, std::size_t k);
};

RunLengthView run_lengths(const SiteColoring& c, std::size_t k);

// (S_W, S_E)
inline std::pair<std::int64_t, std::int64_t> supports_at(const ErosionState& s)
{
    return {s.support(Side::West), s.support(Side::East)};
}

void update_layers(LayerStack& stack, const MicrostepEvent& ev);

} // namespace erosim
