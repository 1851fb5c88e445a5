#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "erosim/coloring.hpp"

namespace erosim {

struct Layer {
    std::int64_t east = 0;
    std::int64_t west = 0;
    Color eastColor = Color::Blue;

    std::int64_t ext(Side s) const { return s == Side::East ? east : west; }
    std::int64_t& ext(Side s) { return s == Side::East ? east : west; }
    Color color(Side s) const { return s == Side::East ? eastColor : opposite(eastColor); }
    bool operator==(const Layer&) const = default;
};

// Layers of matched east/west runs, outermost first. Layer j covers sites
// 1..L_E(j) and -1..-L_W(j); the color of a site is that of the innermost
// layer covering it.
class LayerStack {
public:
    const std::vector<Layer>& layers() const { return layers_; }
    std::size_t size() const { return layers_.size(); }

    // Online update after a walker of color c settles at distance x on side s.
    // Throws std::logic_error if the update cannot keep the stack consistent.
    void update(Side s, std::int64_t x, Color c);

    // Modified run lengths E_m(j) = L_E(j) - L_E(j+1), outermost first.
    std::vector<std::int64_t> modified(Side s) const;

    // Hard invariants: monotone extents, |L_E - L_W| <= 1, alternating and
    // opposite colors, no layer empty on both sides, |E_m - W_m| <= 2.
    // Returns an empty string when all hold, otherwise a description.
    std::string violation() const;

    // Coloring implied by the stack.
    SiteColoring coloring() const;

    // Nonzero modified runs equal the plain runs of c, in order, on both sides.
    bool strict_match(const SiteColoring& c) const;

    std::int64_t max_modified_gap() const;

    std::vector<Layer>& raw() { return layers_; }

private:
    std::vector<Layer> layers_;
};

} // namespace erosim
