#include "erosim/coloring.hpp"

#include <algorithm>
#include <stdexcept>

namespace erosim {

char color_char(Color c)
{
    switch (c) {
    case Color::None: return '.';
    case Color::Blue: return 'B';
    case Color::Red: return 'R';
    default: return static_cast<char>('0' + palette_index(c));
    }
}

Color SiteColoring::color_at(std::int64_t x) const
{
    if (x == 0)
        return Color::None;
    const auto& v = side(x > 0 ? Side::East : Side::West);
    std::int64_t d = x > 0 ? x : -x, acc = 0;
    for (auto it = v.rbegin(); it != v.rend(); ++it) {
        acc += it->len;
        if (d <= acc)
            return it->color;
    }
    return Color::None;
}

bool SiteColoring::settle_mutual(Side s, std::int64_t dist, Color c)
{
    auto& v = raw(s);
    auto& sup = s == Side::East ? supE_ : supW_;
    if (v.empty()) {
        if (dist != 1)
            throw std::logic_error("settle: bad site on empty side");
        v.push_back({c, 1});
        sup = 1;
        return true;
    }
    if (v.back().color == c) {
        if (dist != v.back().len + 1)
            throw std::logic_error("settle: site is not the boundary");
        if (v.size() == 1) {
            ++v.back().len;
            ++sup;
            return true;
        }
        Run inner = v.back();
        v.pop_back();
        ++inner.len;
        if (--v.back().len == 0) {
            v.pop_back();
            if (!v.empty()) {
                v.back().len += inner.len;
                return false;
            }
        }
        v.push_back(inner);
        return false;
    }
    if (dist != 1)
        throw std::logic_error("settle: site is not the boundary");
    if (--v.back().len == 0)
        v.pop_back();
    if (!v.empty() && v.back().color == c)
        ++v.back().len;
    else
        v.push_back({c, 1});
    return false;
}

namespace {

void merge_range(std::vector<Run>& v, std::size_t lo, std::size_t hi)
{
    if (v.empty())
        return;
    hi = std::min(hi, v.size() - 1);
    std::size_t j = lo;
    while (j < hi && j + 1 < v.size()) {
        if (v[j].color == v[j + 1].color) {
            v[j].len += v[j + 1].len;
            v.erase(v.begin() + static_cast<std::ptrdiff_t>(j) + 1);
            --hi;
        } else {
            ++j;
        }
    }
}

} // namespace

void SiteColoring::set(std::int64_t x, Color c)
{
    if (x == 0)
        throw std::logic_error("origin is never colored");
    Side s = x > 0 ? Side::East : Side::West;
    auto& v = raw(s);
    auto& sup = s == Side::East ? supE_ : supW_;
    std::int64_t d = x > 0 ? x : -x;
    if (d > sup) {
        if (d != sup + 1 || c == Color::None)
            throw std::logic_error("colored region must stay contiguous");
        if (!v.empty() && v.front().color == c)
            ++v.front().len;
        else
            v.insert(v.begin(), {c, 1});
        ++sup;
        return;
    }
    if (c == Color::None)
        throw std::logic_error("cannot erase a site");
    std::int64_t acc = 0;
    std::size_t i = v.size();
    std::int64_t off = 0;
    while (i-- > 0) {
        if (acc + v[i].len >= d) {
            off = d - acc;
            break;
        }
        acc += v[i].len;
    }
    if (v[i].color == c)
        return;
    Run old = v[i];
    std::vector<Run> repl;
    if (old.len - off > 0)
        repl.push_back({old.color, old.len - off});
    repl.push_back({c, 1});
    if (off - 1 > 0)
        repl.push_back({old.color, off - 1});
    v.erase(v.begin() + static_cast<std::ptrdiff_t>(i));
    v.insert(v.begin() + static_cast<std::ptrdiff_t>(i), repl.begin(), repl.end());
    merge_range(v, i == 0 ? 0 : i - 1, i + repl.size());
}

SiteColoring SiteColoring::from_sites(const std::vector<Color>& east, const std::vector<Color>& west)
{
    SiteColoring out;
    for (Side s : {Side::East, Side::West}) {
        const auto& src = s == Side::East ? east : west;
        auto& v = out.raw(s);
        bool ended = false;
        for (Color c : src) {
            if (c == Color::None) {
                ended = true;
                continue;
            }
            if (ended)
                throw std::invalid_argument("colored sites must be contiguous");
            if (!v.empty() && v.front().color == c)
                ++v.front().len;
            else
                v.insert(v.begin(), {c, 1});
        }
    }
    out.recount();
    return out;
}

std::vector<Color> SiteColoring::sites(Side s) const
{
    std::vector<Color> out;
    const auto& v = side(s);
    for (auto it = v.rbegin(); it != v.rend(); ++it)
        out.insert(out.end(), static_cast<std::size_t>(it->len), it->color);
    return out;
}

std::string SiteColoring::to_string() const
{
    std::string w, e;
    for (Color c : sites(Side::West))
        w.insert(w.begin(), color_char(c));
    for (Color c : sites(Side::East))
        e.push_back(color_char(c));
    return w + "|" + e;
}

void SiteColoring::recount()
{
    supE_ = supW_ = 0;
    for (const auto& r : east_)
        supE_ += r.len;
    for (const auto& r : west_)
        supW_ += r.len;
}

void SiteColoring::check() const
{
    for (Side s : {Side::East, Side::West}) {
        const auto& v = side(s);
        std::int64_t sum = 0;
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (v[i].len < 1 || v[i].color == Color::None)
                throw std::logic_error("bad run");
            if (i > 0 && v[i].color == v[i - 1].color)
                throw std::logic_error("adjacent runs share a color");
            sum += v[i].len;
        }
        if (sum != support(s))
            throw std::logic_error("support cache out of date");
    }
}

} // namespace erosim
