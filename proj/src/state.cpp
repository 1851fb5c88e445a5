#include "erosim/state.hpp"

#include <cstdlib>
#include <limits>
#include <stdexcept>

#include "erosim/walk.hpp"

namespace erosim {

namespace {

enum class Settled { No, Conversion, Exploration };

void emit(ErosionState& s)
{
    Color c = s.nextColor;
    s.active = ActiveParticle{0, c};
    s.nextColor = opposite(c);
    s.westStop = s.coloring.boundary(Side::West, c);
    s.eastStop = s.coloring.boundary(Side::East, c);
    if (s.options.goodness)
        s.label = goodness_label(s.coloring, c);
    if (s.sink)
        s.sink({MicrostepEvent::Kind::Emitted, 0, c});
}

void add_time(ErosionState& s, std::uint64_t steps)
{
    if (static_cast<std::uint64_t>(kMicrostepCap - s.microsteps) < steps)
        throw std::overflow_error("microstep budget exceeded");
    s.microsteps += static_cast<std::int64_t>(steps);
    if (s.options.goodness)
        record_goodness(s.goodness, s.label, steps);
}

void check_settle(ErosionState& s)
{
    auto& T = s.tally;
    ++T.settles;
    if (std::llabs(s.support(Side::East) - s.support(Side::West)) > 1)
        ++T.supportGap;
    if (std::llabs(s.redCount - s.blueCount) > 2)
        ++T.redBlue;
    if (s.fromEmpty) {
        std::int64_t d = s.blueCount - s.redCount;
        if (s.particles % 2 == 1 ? d < 0 : d > 0)
            ++T.parity;
    }
    if (martingale_value(s) != s.martingale)
        ++T.martingale;
    if (s.options.layers) {
        if (!s.layers.violation().empty() || !(s.layers.coloring() == s.coloring))
            ++T.layers;
        if (!s.layers.strict_match(s.coloring))
            ++T.layerStrict;
        T.maxModifiedGap = std::max(T.maxModifiedGap, s.layers.max_modified_gap());
    }
}

Settled settle(ErosionState& s)
{
    ActiveParticle p = *s.active;
    Side side = p.position > 0 ? Side::East : Side::West;
    std::int64_t dist = std::llabs(p.position);
    std::int64_t sE = s.support(Side::East), sW = s.support(Side::West);
    bool exploring = dist == s.coloring.support(side) + 1;
    if (exploring && s.options.checks) {
        ++s.tally.explorations;
        Color e = s.coloring.adjacent(Side::East), w = s.coloring.adjacent(Side::West);
        bool mono = s.coloring.monochromatic(Side::East) && s.coloring.monochromatic(Side::West);
        if (!mono || (e != Color::None && w != Color::None && e == w))
            ++s.tally.monochrome;
    }
    bool explored = s.coloring.settle_mutual(side, dist, p.color);
    int sg = sign_of(p.color);
    if (explored) {
        ExplorationRecord r;
        r.transition = sE == sW ? ExplorationRecord::Transition::ToAsymmetric
                                : ExplorationRecord::Transition::ToSymmetric;
        r.k = std::min(sE, sW);
        r.site = p.position;
        r.particle = s.particles + 1;
        r.microstep = static_cast<std::uint64_t>(s.microsteps);
        r.martingale = s.martingale;
        if (s.options.checks) {
            std::int64_t k = r.k;
            std::int64_t level = sE == sW ? (k + 1) * (k + 2) : (k + 2) * (k + 2) - 1;
            if (std::llabs(r.martingale) != level)
                ++s.tally.boundary;
        }
        s.explorations.push_back(r);
        if (s.trajectory)
            s.trajectory->marks.push_back({r.microstep, sE == sW ? 'E' : 'F'});
        s.martingale -= sg * p.position;
        (p.color == Color::Blue ? s.blueCount : s.redCount) += 1;
    } else {
        (p.color == Color::Blue ? s.blueCount : s.redCount) += 1;
        (p.color == Color::Blue ? s.redCount : s.blueCount) -= 1;
    }
    ++s.particles;
    s.active.reset();
    if (s.options.layers)
        s.layers.update(side, dist, p.color);
    if (s.options.checks)
        check_settle(s);
    if (s.sink)
        s.sink({explored ? MicrostepEvent::Kind::SettledExploration : MicrostepEvent::Kind::SettledConversion,
                p.position, p.color});
    emit(s);
    return explored ? Settled::Exploration : Settled::Conversion;
}

MicrostepEvent step_once(ErosionState& s, int dir)
{
    ensure_active(s);
    auto& p = *s.active;
    add_time(s, 1);
    p.position += dir;
    s.martingale += 2 * sign_of(p.color) * dir;
    if (s.trajectory)
        s.trajectory->append((dir > 0) != (p.color == Color::Red) ? 1 : 0, 1);
    if (p.position == -s.westStop || p.position == s.eastStop) {
        std::int64_t x = p.position;
        Color c = p.color;
        auto r = settle(s);
        return {r == Settled::Exploration ? MicrostepEvent::Kind::SettledExploration
                                          : MicrostepEvent::Kind::SettledConversion,
                x, c};
    }
    MicrostepEvent ev{MicrostepEvent::Kind::Moved, p.position, p.color};
    if (s.sink)
        s.sink(ev);
    return ev;
}

// Walks the active particle for at most `budget` microsteps.
Settled advance(ErosionState& s, std::uint64_t budget)
{
    ensure_active(s);
    if (s.sink) {
        for (std::uint64_t i = 0; i < budget; ++i) {
            auto ev = step_once(s, s.rng.bit() ? 1 : -1);
            if (ev.kind == MicrostepEvent::Kind::SettledExploration)
                return Settled::Exploration;
            if (ev.kind == MicrostepEvent::Kind::SettledConversion)
                return Settled::Conversion;
        }
        return Settled::No;
    }
    auto& p = *s.active;
    auto r = walk_exact(s.rng, p.position, s.westStop, s.eastStop, budget, s.trajectory, p.color == Color::Red);
    add_time(s, r.steps);
    s.martingale += 2 * sign_of(p.color) * (r.pos - p.position);
    p.position = r.pos;
    return r.absorbed ? settle(s) : Settled::No;
}

} // namespace

void InvariantTally::merge(const InvariantTally& o)
{
    settles += o.settles;
    explorations += o.explorations;
    supportGap += o.supportGap;
    redBlue += o.redBlue;
    parity += o.parity;
    monochrome += o.monochrome;
    martingale += o.martingale;
    boundary += o.boundary;
    layers += o.layers;
    layerStrict += o.layerStrict;
    maxModifiedGap = std::max(maxModifiedGap, o.maxModifiedGap);
}

ErosionState new_state(std::uint64_t seed, StateOptions opts)
{
    ErosionState s;
    s.rng = Rng(seed);
    s.options = opts;
    return s;
}

ErosionState state_from_coloring(const SiteColoring& c, Color first, std::uint64_t seed, StateOptions opts)
{
    ErosionState s = new_state(seed, opts);
    s.coloring = c;
    s.coloring.check();
    s.nextColor = first;
    s.fromEmpty = false;
    for (Side side : {Side::East, Side::West})
        for (const Run& r : c.runs(side))
            (r.color == Color::Blue ? s.blueCount : s.redCount) += r.len;
    s.martingale = martingale_value(s);
    bool mono = c.monochromatic(Side::East) && c.monochromatic(Side::West);
    Color e = c.adjacent(Side::East), w = c.adjacent(Side::West);
    if (mono && (e == Color::None || w == Color::None || e != w) && c.total_support() > 0) {
        Layer l;
        l.east = c.support(Side::East);
        l.west = c.support(Side::West);
        l.eastColor = e != Color::None ? e : opposite(w);
        s.layers.raw().push_back(l);
    } else if (c.total_support() > 0) {
        s.options.layers = false;
    }
    return s;
}

std::pair<std::int64_t, std::int64_t> stopping_set_boundaries(const SiteColoring& c, Color walker)
{
    if (walker == Color::None)
        throw std::invalid_argument("walker must be colored");
    return {-c.boundary(Side::West, walker), c.boundary(Side::East, walker)};
}

void ensure_active(ErosionState& s)
{
    if (!s.active)
        emit(s);
}

MicrostepEvent microstep(ErosionState& s)
{
    ensure_active(s);
    int dir = s.rng.bit() ? 1 : -1;
    return step_once(s, dir);
}

MicrostepEvent microstep(ErosionState& s, int direction)
{
    if (direction != 1 && direction != -1)
        throw std::invalid_argument("direction must be +1 or -1");
    return step_once(s, direction);
}

void run_until_particles(ErosionState& s, std::uint64_t n, Mode mode)
{
    if (n < s.particles)
        throw std::invalid_argument("run_until_particles: target below current count");
    while (s.particles < n) {
        ensure_active(s);
        if (mode == Mode::Fast && s.active->position == 0)
            fast_settle(s);
        else
            advance(s, std::numeric_limits<std::uint64_t>::max());
    }
}

void run_until_microsteps(ErosionState& s, std::int64_t t)
{
    if (t < s.microsteps)
        throw std::invalid_argument("run_until_microsteps: target below current count");
    if (t > kMicrostepCap)
        throw std::overflow_error("microstep budget exceeded");
    while (s.microsteps < t)
        advance(s, static_cast<std::uint64_t>(t - s.microsteps));
    ensure_active(s);
}

std::int64_t run_until_exploration(ErosionState& s)
{
    for (;;) {
        ensure_active(s);
        if (advance(s, std::numeric_limits<std::uint64_t>::max()) == Settled::Exploration)
            return s.explorations.back().site;
    }
}

std::int64_t martingale_value(const ErosionState& s)
{
    std::int64_t m = 0;
    for (Side side : {Side::East, Side::West}) {
        std::int64_t dir = side == Side::East ? 1 : -1;
        std::int64_t from = 1;
        const auto& v = s.coloring.runs(side);
        for (auto it = v.rbegin(); it != v.rend(); ++it) {
            std::int64_t to = from + it->len - 1;
            m += sign_of(it->color) * dir * (from + to) * it->len / 2;
            from = to + 1;
        }
    }
    if (s.active)
        m += 2 * sign_of(s.active->color) * s.active->position;
    return m;
}

MicrostepEvent fast_settle(ErosionState& s)
{
    ensure_active(s);
    if (s.active->position != 0)
        throw std::logic_error("fast_settle: walker already moving");
    if (s.trajectory || s.sink)
        throw std::logic_error("fast_settle: cannot record microsteps");
    auto& p = *s.active;
    std::int64_t A = s.westStop, B = s.eastStop;
    bool east = s.rng.below(static_cast<std::uint64_t>(A + B)) < static_cast<std::uint64_t>(A);
    add_time(s, static_cast<std::uint64_t>(A * B));
    p.position = east ? B : -A;
    s.martingale += 2 * sign_of(p.color) * p.position;
    std::int64_t x = p.position;
    Color c = p.color;
    auto r = settle(s);
    return {r == Settled::Exploration ? MicrostepEvent::Kind::SettledExploration
                                      : MicrostepEvent::Kind::SettledConversion,
            x, c};
}

} // namespace erosim
