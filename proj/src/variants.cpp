#include "erosim/variants.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>

#include "erosim/walk.hpp"

namespace erosim {

void ColorRule::validate() const
{
    if (palette < 1 || palette > 250)
        throw std::invalid_argument("palette size must be in [1, 250]");
    if (antagonism == Antagonism::Cyclic && palette < 2)
        throw std::invalid_argument("cyclic antagonism needs at least two colors");
    if (schedule == Schedule::Periodic) {
        if (pattern.empty())
            throw std::invalid_argument("periodic schedule needs a pattern");
        for (int k : pattern)
            if (k < 0 || k >= palette)
                throw std::invalid_argument("pattern entry outside the palette");
    }
}

bool ColorRule::stops_at(int k, Color site) const
{
    if (site == Color::None)
        return true;
    int j = palette_index(site);
    if (antagonism == Antagonism::Mutual)
        return j != k;
    return j == (k + palette - 1) % palette;
}

int ColorRule::color_of(std::uint64_t i, Rng& rng) const
{
    switch (schedule) {
    case Schedule::Alternating:
        return static_cast<int>(i % static_cast<std::uint64_t>(palette));
    case Schedule::IidUniform:
        return static_cast<int>(rng.below(static_cast<std::uint64_t>(palette)));
    case Schedule::Periodic:
        return pattern[i % pattern.size()];
    }
    return 0;
}

std::vector<std::uint64_t> geometric_checkpoints(std::uint64_t n, int perDecade)
{
    std::vector<std::uint64_t> out;
    for (int i = 0;; ++i) {
        auto v = static_cast<std::uint64_t>(std::llround(std::pow(10.0, static_cast<double>(i) / perDecade)));
        if (v >= n)
            break;
        if (out.empty() || v > out.back())
            out.push_back(v);
    }
    out.push_back(n);
    return out;
}

namespace {

// Distance to the first site on side s where a walker of color k stops.
std::int64_t stop_distance(const SiteColoring& c, Side s, const ColorRule& rule, int k)
{
    const auto& v = c.runs(s);
    std::int64_t d = 1;
    for (auto it = v.rbegin(); it != v.rend(); ++it) {
        if (rule.stops_at(k, it->color))
            return d;
        d += it->len;
    }
    return d;
}

} // namespace

VariantLineResult run_variant_line(const ColorRule& rule, std::uint64_t n, std::uint64_t seed, Mode mode,
                                   std::vector<std::uint64_t> checkpoints)
{
    rule.validate();
    if (checkpoints.empty())
        checkpoints = geometric_checkpoints(n);
    VariantLineResult r;
    Rng rng(seed);
    std::size_t next = 0;
    for (std::uint64_t i = 0; i < n; ++i) {
        int k = rule.color_of(i, rng);
        Color c = palette_color(k);
        std::int64_t x;
        if (rule.originStops && rule.stops_at(k, r.origin)) {
            r.origin = c;
            x = 0;
        } else {
            std::int64_t A = stop_distance(r.coloring, Side::West, rule, k);
            std::int64_t B = stop_distance(r.coloring, Side::East, rule, k);
            if (mode == Mode::Fast) {
                bool east = rng.below(static_cast<std::uint64_t>(A + B)) < static_cast<std::uint64_t>(A);
                x = east ? B : -A;
                r.microsteps += A * B;
            } else {
                auto w = walk_exact(rng, 0, A, B, std::numeric_limits<std::uint64_t>::max());
                x = w.pos;
                r.microsteps += static_cast<std::int64_t>(w.steps);
            }
            if (r.microsteps > kMicrostepCap)
                throw std::overflow_error("microstep budget exceeded");
            Color old = r.coloring.color_at(x);
            if (rule.antagonism == ColorRule::Antagonism::Cyclic && rule.palette > 2 && old != Color::None &&
                palette_index(old) == (k + 1) % rule.palette)
                ++r.cyclicViolations;
            r.coloring.set(x, c);
        }
        ++r.particles;
        while (next < checkpoints.size() && checkpoints[next] == r.particles) {
            r.series.emplace_back(r.particles, r.colored());
            ++next;
        }
    }
    return r;
}

std::uint64_t LatticeColoring::pack(const Point& p)
{
    std::uint64_t key = 0;
    for (int i = 0; i < 3; ++i) {
        if (p[static_cast<std::size_t>(i)] < -(1 << 20) || p[static_cast<std::size_t>(i)] >= (1 << 20))
            throw std::out_of_range("lattice coordinate out of range");
        key |= static_cast<std::uint64_t>(p[static_cast<std::size_t>(i)] + (1 << 20)) << (21 * i);
    }
    return key;
}

LatticeColoring::Point LatticeColoring::unpack(std::uint64_t key)
{
    Point p{};
    for (int i = 0; i < 3; ++i)
        p[static_cast<std::size_t>(i)] = static_cast<std::int32_t>((key >> (21 * i)) & ((1u << 21) - 1)) - (1 << 20);
    return p;
}

ZdResult run_zd(int d, std::uint64_t n, std::uint64_t seed, ZdOptions opts)
{
    if (d != 2 && d != 3)
        throw std::invalid_argument("run_zd: d must be 2 or 3");
    if (opts.checkpoints.empty())
        opts.checkpoints = geometric_checkpoints(n);
    ZdResult r{LatticeColoring(d), {}, 0, 0};
    Rng rng(seed);
    std::size_t next = 0;
    const LatticeColoring::Point origin{0, 0, 0};
    for (std::uint64_t i = 0; i < n; ++i) {
        Color c = i % 2 == 0 ? Color::Blue : Color::Red;
        LatticeColoring::Point p{0, 0, 0};
        std::uint64_t steps = 0;
        bool settled = false;
        while (steps < opts.walkCap) {
            auto dir = d == 2 ? rng.bits(2) : rng.below(6);
            auto axis = static_cast<std::size_t>(dir >> 1);
            p[axis] += dir & 1 ? 1 : -1;
            ++steps;
            if (p == origin)
                continue;
            Color here = r.coloring.at(p);
            if (here != c) {
                r.coloring.set(p, c);
                settled = true;
                break;
            }
        }
        r.steps += steps;
        if (!settled)
            ++r.capHits;
        if (r.coloring.size() > opts.maxSites)
            throw std::length_error("run_zd: colored set exceeds the memory guard");
        while (next < opts.checkpoints.size() && opts.checkpoints[next] == i + 1) {
            r.series.emplace_back(i + 1, static_cast<std::int64_t>(r.coloring.size()));
            ++next;
        }
    }
    return r;
}

void write_slice_csv(std::ostream& os, const LatticeColoring& c)
{
    os << "x,y,colorIndex\n";
    std::vector<LatticeColoring::Point> pts;
    for (const auto& [key, col] : c.raw()) {
        auto p = LatticeColoring::unpack(key);
        if (p[2] == 0)
            pts.push_back(p);
    }
    std::sort(pts.begin(), pts.end());
    for (const auto& p : pts)
        os << p[0] << ',' << p[1] << ',' << palette_index(c.at(p)) << '\n';
}

double loglog_slope(const std::vector<std::pair<std::uint64_t, std::int64_t>>& series, std::uint64_t from,
                    std::uint64_t to)
{
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int m = 0;
    for (auto [n, y] : series) {
        if (n < from || n > to || y <= 0)
            continue;
        double lx = std::log(static_cast<double>(n)), ly = std::log(static_cast<double>(y));
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
        ++m;
    }
    if (m < 2)
        throw std::invalid_argument("loglog_slope: need two points in range");
    return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

} // namespace erosim
