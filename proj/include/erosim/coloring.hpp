#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace erosim {

// Palette index k is stored as k+1, so the two-color model uses Blue=1, Red=2.
enum class Color : std::uint8_t { None = 0, Blue = 1, Red = 2 };

inline Color opposite(Color c) { return c == Color::Blue ? Color::Red : Color::Blue; }
inline int sign_of(Color c) { return c == Color::Blue ? 1 : -1; }
inline Color palette_color(int k) { return static_cast<Color>(k + 1); }
inline int palette_index(Color c) { return static_cast<int>(c) - 1; }
char color_char(Color c);

enum class Side : std::uint8_t { East = 0, West = 1 };

struct Run {
    Color color;
    std::int64_t len;
    bool operator==(const Run&) const = default;
};

// Run-length encoded coloring of Z minus the origin. Each side keeps its runs
// with the innermost run at the back, since settles only touch the inner end
// (conversions) or extend a monochromatic side (explorations).
class SiteColoring {
public:
    // Runs of side s, outermost first (the innermost run is at the back).
    const std::vector<Run>& runs(Side s) const { return side(s); }

    std::int64_t support(Side s) const { return s == Side::East ? supE_ : supW_; }
    std::int64_t total_support() const { return supE_ + supW_; }
    Color color_at(std::int64_t x) const;
    Color adjacent(Side s) const { return side(s).empty() ? Color::None : side(s).back().color; }
    std::int64_t adjacent_len(Side s) const { return side(s).empty() ? 0 : side(s).back().len; }
    bool monochromatic(Side s) const { return side(s).size() <= 1; }

    // Distance from the origin to the first site on side s where a walker of
    // color c stops under mutual antagonism.
    std::int64_t boundary(Side s, Color c) const
    {
        const auto& v = side(s);
        if (v.empty() || v.back().color != c)
            return 1;
        return v.back().len + 1;
    }

    // Paint site at distance `dist` on side s with color c. The site must be
    // the first site beyond the innermost same-colored runs, as produced by
    // boundary(). Returns true when the site was previously uncolored.
    bool settle_mutual(Side s, std::int64_t dist, Color c);

    // General repaint of one site, used by the variants (and tests).
    void set(std::int64_t x, Color c);

    static SiteColoring from_sites(const std::vector<Color>& east, const std::vector<Color>& west);
    std::vector<Color> sites(Side s) const;
    std::string to_string() const;
    void check() const;

    bool operator==(const SiteColoring& o) const
    {
        return east_ == o.east_ && west_ == o.west_;
    }

    std::vector<Run>& raw(Side s) { return s == Side::East ? east_ : west_; }
    void recount();

private:
    const std::vector<Run>& side(Side s) const { return s == Side::East ? east_ : west_; }

    std::vector<Run> east_, west_;
    std::int64_t supE_ = 0, supW_ = 0;
};

} // namespace erosim
