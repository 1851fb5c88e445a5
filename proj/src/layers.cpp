#include "erosim/layers.hpp"

#include <algorithm>
#include <cstdlib>
#include <stdexcept>

namespace erosim {

void LayerStack::update(Side s, std::int64_t x, Color c)
{
    auto& v = layers_;
    std::ptrdiff_t ii = static_cast<std::ptrdiff_t>(v.size()) - 1;
    while (ii >= 0 && v[static_cast<std::size_t>(ii)].ext(s) < x)
        --ii;
    auto j = static_cast<std::size_t>(ii + 1);
    if (j < v.size()) {
        if (v[j].color(s) != c || v[j].ext(s) != x - 1)
            throw std::logic_error("layer update: settle does not extend layer " + std::to_string(j));
        ++v[j].ext(s);
    } else {
        if (ii >= 0 && x != 1)
            throw std::logic_error("layer update: new layer away from the origin");
        Layer l;
        l.eastColor = s == Side::East ? c : opposite(c);
        l.ext(s) = 1;
        v.push_back(l);
    }
    if (ii >= 0) {
        auto i = static_cast<std::size_t>(ii);
        if (v[i].east == v[i + 1].east && v[i].west == v[i + 1].west) {
            if (i == 0)
                v.erase(v.begin());
            else
                v.erase(v.begin() + ii, v.begin() + ii + 2);
        }
    }
}

std::vector<std::int64_t> LayerStack::modified(Side s) const
{
    std::vector<std::int64_t> out(layers_.size());
    for (std::size_t j = 0; j < layers_.size(); ++j)
        out[j] = layers_[j].ext(s) - (j + 1 < layers_.size() ? layers_[j + 1].ext(s) : 0);
    return out;
}

std::string LayerStack::violation() const
{
    auto em = modified(Side::East), wm = modified(Side::West);
    for (std::size_t j = 0; j < layers_.size(); ++j) {
        const Layer& l = layers_[j];
        if (std::llabs(l.east - l.west) > 1)
            return "layer " + std::to_string(j) + ": |L_E - L_W| > 1";
        if (j > 0) {
            const Layer& p = layers_[j - 1];
            if (l.east > p.east || l.west > p.west)
                return "layer " + std::to_string(j) + ": extents increase inward";
            if (l.eastColor == p.eastColor)
                return "layer " + std::to_string(j) + ": colors do not alternate";
        }
        if (em[j] == 0 && wm[j] == 0)
            return "layer " + std::to_string(j) + ": empty";
        if (std::llabs(em[j] - wm[j]) > 2)
            return "layer " + std::to_string(j) + ": |E_m - W_m| > 2";
    }
    return {};
}

SiteColoring LayerStack::coloring() const
{
    std::vector<Color> sides[2];
    for (Side s : {Side::East, Side::West}) {
        auto& out = sides[static_cast<int>(s)];
        for (const Layer& l : layers_) {
            if (out.size() < static_cast<std::size_t>(l.ext(s)))
                out.resize(static_cast<std::size_t>(l.ext(s)), Color::None);
            for (std::int64_t x = 0; x < l.ext(s); ++x)
                out[static_cast<std::size_t>(x)] = l.color(s);
        }
    }
    return SiteColoring::from_sites(sides[0], sides[1]);
}

bool LayerStack::strict_match(const SiteColoring& c) const
{
    for (Side s : {Side::East, Side::West}) {
        std::vector<std::int64_t> nz;
        for (auto m : modified(s))
            if (m > 0)
                nz.push_back(m);
        const auto& runs = c.runs(s);
        if (nz.size() != runs.size())
            return false;
        for (std::size_t j = 0; j < nz.size(); ++j)
            if (nz[j] != runs[j].len)
                return false;
    }
    return true;
}

std::int64_t LayerStack::max_modified_gap() const
{
    auto em = modified(Side::East), wm = modified(Side::West);
    std::int64_t g = 0;
    for (std::size_t j = 0; j < em.size(); ++j)
        g = std::max<std::int64_t>(g, std::llabs(em[j] - wm[j]));
    return g;
}

} // namespace erosim
