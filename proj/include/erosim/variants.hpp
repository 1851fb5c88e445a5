#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <utility>
#include <vector>

#include <absl/container/flat_hash_map.h>

#include "erosim/coloring.hpp"
#include "erosim/rng.hpp"
#include "erosim/state.hpp"

namespace erosim {

struct ColorRule {
    enum class Schedule { Alternating, IidUniform, Periodic };
    enum class Antagonism { Mutual, Cyclic };

    int palette = 2;
    Schedule schedule = Schedule::Alternating;
    std::vector<int> pattern; // palette indices, for Periodic
    Antagonism antagonism = Antagonism::Mutual;
    bool originStops = false; // let walkers settle on the origin too

    // Does a walker of palette color k stop at a site holding `site`?
    bool stops_at(int k, Color site) const;
    // Palette color of particle i (0-based). IidUniform draws from rng.
    int color_of(std::uint64_t i, Rng& rng) const;
    void validate() const;
};

// Particle counts 1, then about `perDecade` per decade, ending at n.
std::vector<std::uint64_t> geometric_checkpoints(std::uint64_t n, int perDecade = 4);

struct VariantLineResult {
    SiteColoring coloring;
    Color origin = Color::None;
    std::uint64_t particles = 0;
    std::int64_t microsteps = 0;
    std::vector<std::pair<std::uint64_t, std::int64_t>> series; // (n, colored sites)
    std::uint64_t cyclicViolations = 0; // color k overwrote color k+1

    std::int64_t colored() const { return coloring.total_support() + (origin != Color::None ? 1 : 0); }
};

VariantLineResult run_variant_line(const ColorRule& rule, std::uint64_t n, std::uint64_t seed,
                                   Mode mode = Mode::Exact, std::vector<std::uint64_t> checkpoints = {});

// Colored sites of Z^d, keyed by packed coordinates (21 bits each).
class LatticeColoring {
public:
    explicit LatticeColoring(int d = 2) : d_(d) {}
    using Point = std::array<std::int32_t, 3>;

    static std::uint64_t pack(const Point& p);
    static Point unpack(std::uint64_t key);

    int dim() const { return d_; }
    std::size_t size() const { return sites_.size(); }
    Color at(const Point& p) const
    {
        auto it = sites_.find(pack(p));
        return it == sites_.end() ? Color::None : it->second;
    }
    void set(const Point& p, Color c) { sites_[pack(p)] = c; }
    const absl::flat_hash_map<std::uint64_t, Color>& raw() const { return sites_; }

private:
    int d_;
    absl::flat_hash_map<std::uint64_t, Color> sites_;
};

struct ZdOptions {
    std::uint64_t walkCap = std::uint64_t{1} << 32; // steps per particle before giving up
    std::size_t maxSites = 50'000'000;
    std::vector<std::uint64_t> checkpoints;        // default: geometric
};

struct ZdResult {
    LatticeColoring coloring;
    std::vector<std::pair<std::uint64_t, std::int64_t>> series;
    std::uint64_t steps = 0;
    std::uint64_t capHits = 0; // particles dropped at the walk cap
};

// Alternating two-color erosion on Z^d, d in {2, 3}.
ZdResult run_zd(int d, std::uint64_t n, std::uint64_t seed, ZdOptions opts = {});

// CSV of the plane z = 0 (all sites for d = 2): x,y,colorIndex
void write_slice_csv(std::ostream& os, const LatticeColoring& c);

// Least squares slope of log y on log x.
double loglog_slope(const std::vector<std::pair<std::uint64_t, std::int64_t>>& series, std::uint64_t from,
                    std::uint64_t to);

} // namespace erosim
