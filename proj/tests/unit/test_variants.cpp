#include <doctest.h>

#include <map>
#include <sstream>

#include "erosim/state.hpp"
#include "erosim/variants.hpp"

using namespace erosim;

namespace {

// Site-by-site line simulator for any rule, one rng draw per step.
struct NaiveLine {
    std::map<std::int64_t, Color> sites;
    std::int64_t t = 0;

    void particle(const ColorRule& rule, int k, Rng& rng)
    {
        Color c = palette_color(k);
        auto at = [&](std::int64_t x) {
            auto it = sites.find(x);
            return it == sites.end() ? Color::None : it->second;
        };
        if (rule.originStops && rule.stops_at(k, at(0))) {
            sites[0] = c;
            return;
        }
        std::int64_t x = 0;
        for (;;) {
            x += rng.bit() ? 1 : -1;
            ++t;
            if (x != 0 && rule.stops_at(k, at(x))) {
                sites[x] = c;
                return;
            }
        }
    }
};

} // namespace

TEST_CASE("two-color mutual rule reproduces the core model")
{
    ColorRule rule;
    for (std::uint64_t seed = 0; seed < 20; ++seed)
        for (Mode mode : {Mode::Exact, Mode::Fast}) {
            auto v = run_variant_line(rule, 3000, seed, mode);
            auto s = new_state(seed, {false, false, false});
            run_until_particles(s, 3000, mode);
            REQUIRE(v.coloring == s.coloring);
            CHECK(v.microsteps == s.microsteps);
        }
}

TEST_CASE("cyclic with two colors equals mutual")
{
    ColorRule m, c;
    c.antagonism = ColorRule::Antagonism::Cyclic;
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        auto a = run_variant_line(m, 2000, seed);
        auto b = run_variant_line(c, 2000, seed);
        CHECK(a.coloring == b.coloring);
        CHECK(a.microsteps == b.microsteps);
    }
}

TEST_CASE("one color is internal DLA")
{
    ColorRule rule;
    rule.palette = 1;
    auto r = run_variant_line(rule, 500, 3, Mode::Fast);
    CHECK(r.colored() == 500);
    for (auto [n, k] : r.series)
        CHECK(k == static_cast<std::int64_t>(n));
    rule.originStops = true;
    auto o = run_variant_line(rule, 500, 3, Mode::Fast);
    CHECK(o.colored() == 500);
    CHECK(o.origin == palette_color(0));
}

TEST_CASE("variant line matches the site-by-site simulator")
{
    std::vector<ColorRule> rules(5);
    rules[1].palette = 3;
    rules[2].palette = 3;
    rules[2].antagonism = ColorRule::Antagonism::Cyclic;
    rules[3].palette = 4;
    rules[3].schedule = ColorRule::Schedule::Periodic;
    rules[3].pattern = {0, 1, 0, 1, 2, 3};
    rules[3].originStops = true;
    rules[4].schedule = ColorRule::Schedule::IidUniform;
    for (std::size_t ri = 0; ri < rules.size(); ++ri)
        for (std::uint64_t seed = 0; seed < 8; ++seed) {
            const auto& rule = rules[ri];
            auto r = run_variant_line(rule, 400, seed);
            NaiveLine nv;
            Rng rng(seed);
            for (std::uint64_t i = 0; i < 400; ++i)
                nv.particle(rule, rule.color_of(i, rng), rng);
            INFO("rule " << ri << " seed " << seed);
            CHECK(nv.t == r.microsteps);
            for (auto [x, c] : nv.sites) {
                if (x == 0)
                    CHECK(r.origin == c);
                else
                    CHECK(r.coloring.color_at(x) == c);
            }
            CHECK(static_cast<std::int64_t>(nv.sites.size()) == r.colored());
        }
}

TEST_CASE("cyclic rule never overwrites the next color")
{
    ColorRule rule;
    rule.palette = 5;
    rule.antagonism = ColorRule::Antagonism::Cyclic;
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        auto r = run_variant_line(rule, 5000, seed, Mode::Fast);
        CHECK(r.cyclicViolations == 0);
        r.coloring.check();
    }
}

TEST_CASE("rule validation")
{
    ColorRule r;
    r.palette = 1;
    r.antagonism = ColorRule::Antagonism::Cyclic;
    CHECK_THROWS(run_variant_line(r, 10, 0));
    ColorRule p;
    p.schedule = ColorRule::Schedule::Periodic;
    CHECK_THROWS(run_variant_line(p, 10, 0));
    p.pattern = {0, 2};
    CHECK_THROWS(run_variant_line(p, 10, 0));
}

TEST_CASE("geometric checkpoints")
{
    auto c = geometric_checkpoints(1000, 1);
    CHECK(c == std::vector<std::uint64_t>{1, 10, 100, 1000});
    CHECK(geometric_checkpoints(1) == std::vector<std::uint64_t>{1});
}

TEST_CASE("erosion on Z^d")
{
    for (int d : {2, 3}) {
        auto one = run_zd(d, 1, 5);
        REQUIRE(one.coloring.size() == 1);
        auto key = one.coloring.raw().begin()->first;
        auto p = LatticeColoring::unpack(key);
        CHECK(std::abs(p[0]) + std::abs(p[1]) + std::abs(p[2]) == 1);
        CHECK(one.steps == 1);

        auto r = run_zd(d, 3000, 7);
        CHECK(r.capHits == 0);
        for (auto [n, k] : r.series)
            CHECK(k <= static_cast<std::int64_t>(n));
        CHECK(r.coloring.at({0, 0, 0}) == Color::None);
        if (d == 2)
            for (const auto& [k, c] : r.coloring.raw())
                CHECK(LatticeColoring::unpack(k)[2] == 0);
    }
    ZdOptions tight;
    tight.walkCap = 1;
    auto capped = run_zd(2, 200, 1, tight);
    CHECK(capped.capHits > 0);
    CHECK_THROWS(run_zd(4, 10, 1));
}

TEST_CASE("slice csv and packing")
{
    LatticeColoring c(3);
    c.set({1, -2, 0}, Color::Red);
    c.set({0, 1, 1}, Color::Blue);
    std::ostringstream os;
    write_slice_csv(os, c);
    CHECK(os.str() == "x,y,colorIndex\n1,-2,1\n");
    LatticeColoring::Point p{-(1 << 20), (1 << 20) - 1, 5};
    CHECK(LatticeColoring::unpack(LatticeColoring::pack(p)) == p);
    CHECK_THROWS(LatticeColoring::pack({1 << 20, 0, 0}));
}

TEST_CASE("log-log slope")
{
    std::vector<std::pair<std::uint64_t, std::int64_t>> s;
    for (std::uint64_t n = 1; n <= 1000000; n *= 10)
        s.emplace_back(n, static_cast<std::int64_t>(std::llround(std::sqrt(static_cast<double>(n)) * 3)));
    CHECK(loglog_slope(s, 100, 1000000) == doctest::Approx(0.5).epsilon(1e-3));
}
