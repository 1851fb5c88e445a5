#pragma once

// Site-by-site reference simulator used as an oracle for the run-length engine.

#include <cstdint>
#include <map>
#include <vector>

#include "erosim/coloring.hpp"
#include "erosim/rng.hpp"

namespace naive {

using erosim::Color;

struct Sim {
    std::map<std::int64_t, Color> site;
    std::uint64_t n = 0;
    std::int64_t t = 0;
    Color first = Color::Blue;

    Color at(std::int64_t x) const
    {
        auto it = site.find(x);
        return it == site.end() ? Color::None : it->second;
    }

    // One particle, one random bit per step.
    std::int64_t particle(erosim::Rng& rng)
    {
        Color c = n % 2 == 0 ? first : erosim::opposite(first);
        std::int64_t p = 0;
        for (;;) {
            p += rng.bit() ? 1 : -1;
            ++t;
            if (p != 0 && at(p) != c)
                break;
        }
        site[p] = c;
        ++n;
        return p;
    }

    std::vector<Color> side(int dir) const
    {
        std::vector<Color> out;
        for (std::int64_t x = dir;; x += dir) {
            Color c = at(x);
            if (c == Color::None)
                break;
            out.push_back(c);
        }
        return out;
    }
};

} // namespace naive
