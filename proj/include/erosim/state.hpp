#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "erosim/coloring.hpp"
#include "erosim/goodness.hpp"
#include "erosim/layers.hpp"
#include "erosim/rng.hpp"
#include "erosim/trajectory.hpp"

namespace erosim {

inline constexpr std::int64_t kMicrostepCap = std::int64_t{1} << 62;

enum class Mode { Exact, Fast };

struct ActiveParticle {
    std::int64_t position = 0;
    Color color = Color::Blue;
};

struct MicrostepEvent {
    enum class Kind { Moved, SettledConversion, SettledExploration, Emitted };
    Kind kind;
    std::int64_t site = 0; // new position, or settle site
    Color color = Color::None;
};

struct ExplorationRecord {
    enum class Transition { ToAsymmetric, ToSymmetric };
    Transition transition;
    std::int64_t k;             // state (k,k) before ToAsymmetric; min side k before ToSymmetric
    std::uint64_t particle;     // 1-based index of the exploring particle
    std::uint64_t microstep;    // 1-based microstep of the exploration
    std::int64_t martingale;    // value just before the post-exploration adjustment
    std::int64_t site;
};

// Tallies of invariant checks done at settle times when checking is enabled.
struct InvariantTally {
    std::uint64_t settles = 0;
    std::uint64_t explorations = 0;
    std::uint64_t supportGap = 0;    // |S_E - S_W| > 1
    std::uint64_t redBlue = 0;       // |R - B| > 2
    std::uint64_t parity = 0;        // sign of B - R against round parity
    std::uint64_t monochrome = 0;    // exploration from a non-monochromatic-opposite state
    std::uint64_t martingale = 0;    // incremental M differs from recomputed M
    std::uint64_t boundary = 0;      // exploration level mismatch
    std::uint64_t layers = 0;        // hard layer invariants, including stack vs coloring
    std::uint64_t layerStrict = 0;   // nonzero modified runs differ from plain runs
    std::int64_t maxModifiedGap = 0; // max |E_m - W_m| seen

    std::uint64_t hard() const
    {
        return supportGap + redBlue + parity + monochrome + martingale + boundary + layers;
    }
    void merge(const InvariantTally& o);
};

struct StateOptions {
    bool layers = true;
    bool goodness = true;
    bool checks = false;
};

struct ErosionState {
    SiteColoring coloring;
    std::optional<ActiveParticle> active;
    std::uint64_t particles = 0; // settled particles n
    std::int64_t microsteps = 0; // t
    std::int64_t martingale = 0; // M^t
    std::int64_t redCount = 0;
    std::int64_t blueCount = 0;
    Color nextColor = Color::Blue;
    bool fromEmpty = true;
    Rng rng;
    StateOptions options;
    LayerStack layers;
    GoodnessCounters goodness;
    std::vector<ExplorationRecord> explorations;
    InvariantTally tally;

    // Cached for the active walker: stopping distances and its goodness label.
    std::int64_t westStop = 0;
    std::int64_t eastStop = 0;
    GoodnessLabel label;

    Trajectory* trajectory = nullptr; // not owned; records every microstep when set
    std::function<void(const MicrostepEvent&)> sink;

    std::int64_t support(Side s) const { return coloring.support(s); }
};

ErosionState new_state(std::uint64_t seed, StateOptions opts = {});

// State started from an arbitrary coloring; the first emitted walker has
// color `first`. Layers are seeded only for the empty or monochromatic case.
ErosionState state_from_coloring(const SiteColoring& c, Color first, std::uint64_t seed, StateOptions opts = {});

// (west, east): nearest stopping sites of a walker of color c.
std::pair<std::int64_t, std::int64_t> stopping_set_boundaries(const SiteColoring& c, Color walker);

MicrostepEvent microstep(ErosionState& s);
// Same, with the direction forced (+1 or -1) instead of drawn.
MicrostepEvent microstep(ErosionState& s, int direction);

void run_until_particles(ErosionState& s, std::uint64_t n, Mode mode = Mode::Exact);
void run_until_microsteps(ErosionState& s, std::int64_t t);

// Runs until the next settle that colors a new site; returns that site.
std::int64_t run_until_exploration(ErosionState& s);

std::int64_t martingale_value(const ErosionState& s);

// Gambler's ruin shortcut for a freshly emitted walker.
MicrostepEvent fast_settle(ErosionState& s);

// Emits the next particle if none is active.
void ensure_active(ErosionState& s);

} // namespace erosim
