#include "erosim/oracle.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "erosim/parallel.hpp"

namespace erosim {

namespace {

struct ByteInfo {
    std::int8_t net, pmax, pmin;
    std::uint8_t amax, amin; // earliest offset (1..8) of the prefix extremum
};

const std::array<ByteInfo, 256>& byte_table()
{
    static const std::array<ByteInfo, 256> table = [] {
        std::array<ByteInfo, 256> t{};
        for (int b = 0; b < 256; ++b) {
            int v = 0, mx = std::numeric_limits<int>::min(), mn = std::numeric_limits<int>::max(), ax = 0, an = 0;
            for (int i = 0; i < 8; ++i) {
                v += (b >> i) & 1 ? 1 : -1;
                if (v > mx) {
                    mx = v;
                    ax = i + 1;
                }
                if (v < mn) {
                    mn = v;
                    an = i + 1;
                }
            }
            t[static_cast<std::size_t>(b)] = {static_cast<std::int8_t>(v), static_cast<std::int8_t>(mx),
                                              static_cast<std::int8_t>(mn), static_cast<std::uint8_t>(ax),
                                              static_cast<std::uint8_t>(an)};
        }
        return t;
    }();
    return table;
}

constexpr std::int64_t kNever = std::numeric_limits<std::int64_t>::max() / 4;

// tau[a] = first index with |v| = a; sign[a] = sign of v there.
struct Levels {
    std::vector<std::int64_t> tau{0};
    std::vector<int> sign{0};
    std::int64_t at(std::int64_t a) const
    {
        return a < static_cast<std::int64_t>(tau.size()) ? tau[static_cast<std::size_t>(a)] : kNever;
    }
};

Levels levels_of(const DiscretePath& p)
{
    Levels l;
    std::int32_t rec = 0;
    for (std::size_t i = 1; i < p.values.size(); ++i) {
        std::int32_t a = std::abs(p.values[i]);
        if (a > rec) {
            rec = a;
            l.tau.push_back(static_cast<std::int64_t>(i));
            l.sign.push_back(p.values[i] > 0 ? 1 : -1);
        }
    }
    return l;
}

inline std::uint64_t word_at(const std::vector<std::uint64_t>& w, std::size_t i, int s)
{
    return s > 0 ? w[i >> 6] : ~w[i >> 6];
}

Levels levels_of(const std::vector<std::uint64_t>& w, std::size_t m)
{
    const auto& T = byte_table();
    Levels l;
    std::int64_t v = 0, rec = 0;
    std::size_t i = 0;
    while (i < m) {
        if ((i & 63) == 0 && i + 64 <= m && v + 64 <= rec && v - 64 >= -rec) {
            v += 2 * std::popcount(w[i >> 6]) - 64;
            i += 64;
            continue;
        }
        if ((i & 7) == 0 && i + 8 <= m) {
            const auto& b = T[(w[i >> 6] >> (i & 63)) & 0xff];
            if (v + b.pmax <= rec && v + b.pmin >= -rec) {
                v += b.net;
                i += 8;
                continue;
            }
        }
        v += (w[i >> 6] >> (i & 63)) & 1 ? 1 : -1;
        ++i;
        if (v > rec || -v > rec) {
            rec = v > 0 ? v : -v;
            l.tau.push_back(static_cast<std::int64_t>(i));
            l.sign.push_back(v > 0 ? 1 : -1);
        }
    }
    return l;
}

struct Extreme {
    std::int64_t value;
    std::int64_t index;
};

// Earliest minimum (or maximum) of s*v on [p, W], where s*v_p = vp.
Extreme scan(const std::vector<std::uint64_t>& w, std::int64_t p, std::int64_t vp, std::int64_t W, int s, bool wantMin)
{
    const auto& T = byte_table();
    Extreme best{vp, p};
    std::int64_t v = vp;
    auto i = static_cast<std::size_t>(p);
    auto end = static_cast<std::size_t>(W);
    while (i < end) {
        if ((i & 63) == 0 && i + 64 <= end && (wantMin ? v - 64 >= best.value : v + 64 <= best.value)) {
            v += 2 * std::popcount(word_at(w, i, s)) - 64;
            i += 64;
            continue;
        }
        if ((i & 7) == 0 && i + 8 <= end) {
            const auto& b = T[(word_at(w, i, s) >> (i & 63)) & 0xff];
            if (wantMin && v + b.pmin < best.value)
                best = {v + b.pmin, static_cast<std::int64_t>(i) + b.amin};
            if (!wantMin && v + b.pmax > best.value)
                best = {v + b.pmax, static_cast<std::int64_t>(i) + b.amax};
            v += b.net;
            i += 8;
            continue;
        }
        v += (word_at(w, i, s) >> (i & 63)) & 1 ? 1 : -1;
        ++i;
        if (wantMin ? v < best.value : v > best.value)
            best = {v, static_cast<std::int64_t>(i)};
    }
    return best;
}

Extreme scan_path(const DiscretePath& p, std::int64_t from, std::int64_t W, int s, bool wantMin)
{
    Extreme best{s * p.values[static_cast<std::size_t>(from)], from};
    for (std::int64_t i = from + 1; i <= W; ++i) {
        std::int64_t v = s * p.values[static_cast<std::size_t>(i)];
        if (wantMin ? v < best.value : v > best.value)
            best = {v, i};
    }
    return best;
}

struct Choice {
    Carrier carrier;
    bool tie;
};

Choice choose(std::int64_t m, std::int64_t A, const Levels& lf, const Levels& lg)
{
    std::int64_t slackG = lg.at(A + 1) - (m - lf.at(A));
    std::int64_t slackF = lf.at(A + 1) - (m - lg.at(A));
    bool g = slackG > 0, f = slackF > 0;
    if (g != f)
        return {g ? Carrier::G : Carrier::F, false};
    return {slackG >= slackF ? Carrier::G : Carrier::F, true};
}

std::int64_t feasible_level(std::int64_t m, const Levels& lf, const Levels& lg)
{
    std::int64_t A = 0;
    while (lf.at(A + 1) != kNever && lg.at(A + 1) != kNever && lf.at(A + 1) + lg.at(A + 1) <= m)
        ++A;
    return A;
}

// Alternating extrema on a carrier given as an extremum scanner.
template <class Scan>
void fill_extrema(LimitSample& out, std::int64_t A, std::int64_t start, std::int64_t W, std::size_t k, double scale,
                  Scan&& scanner)
{
    std::vector<std::int64_t> xs{A};
    std::int64_t p = start, u = A, pv = A;
    while (xs.size() < k + 1) {
        Extreme mn = scanner(p, pv, W, true);
        xs.push_back(u - mn.value);
        if (xs.size() == k + 1)
            break;
        Extreme mx = scanner(mn.index, mn.value, W, false);
        xs.push_back(mx.value - mn.value);
        u = mx.value;
        p = mx.index;
        pv = mx.value;
    }
    for (std::size_t i = 0; i + 1 < xs.size(); ++i)
        if (xs[i] == xs[i + 1])
            out.tie = true;
    for (auto x : xs)
        out.x.push_back(static_cast<double>(x) * scale);
}

} // namespace

DiscretePath DiscretePath::from_words(const std::vector<std::uint64_t>& words, std::size_t m)
{
    if (words.size() * 64 < m)
        throw std::invalid_argument("from_words: not enough bits");
    DiscretePath p;
    p.values.resize(m + 1);
    std::int32_t v = 0;
    for (std::size_t i = 0; i < m; ++i) {
        v += (words[i >> 6] >> (i & 63)) & 1 ? 1 : -1;
        p.values[i + 1] = v;
    }
    return p;
}

DiscretePath DiscretePath::random(Rng& rng, std::size_t m)
{
    std::vector<std::uint64_t> w((m + 63) / 64);
    for (auto& x : w)
        x = rng.next64();
    return from_words(w, m);
}

HittingResult hitting_functional(const DiscretePath& f, const DiscretePath& g)
{
    if (f.steps() != g.steps() || f.steps() == 0)
        throw std::invalid_argument("hitting_functional: paths must have equal positive length");
    auto m = static_cast<std::int64_t>(f.steps());
    auto lf = levels_of(f), lg = levels_of(g);
    std::int64_t A = feasible_level(m, lf, lg);
    HittingResult h;
    h.level = A;
    h.degenerate = A == 0;
    h.x1 = static_cast<double>(A) / std::sqrt(static_cast<double>(m));
    h.Tf = static_cast<double>(lf.at(A)) / static_cast<double>(m);
    h.Tg = static_cast<double>(lg.at(A)) / static_cast<double>(m);
    return h;
}

LimitSample alternating_extrema(const DiscretePath& f, const DiscretePath& g, std::size_t k)
{
    auto h = hitting_functional(f, g);
    auto m = static_cast<std::int64_t>(f.steps());
    LimitSample out;
    out.Tf = h.Tf;
    out.Tg = h.Tg;
    out.degenerate = h.degenerate;
    if (h.degenerate) {
        out.x.assign(k + 1, 0.0);
        return out;
    }
    auto lf = levels_of(f), lg = levels_of(g);
    std::int64_t A = h.level;
    auto ch = choose(m, A, lf, lg);
    out.carrier = ch.carrier;
    out.tie = ch.tie;
    const DiscretePath& c = ch.carrier == Carrier::G ? g : f;
    const Levels& lc = ch.carrier == Carrier::G ? lg : lf;
    const Levels& lo = ch.carrier == Carrier::G ? lf : lg;
    int s = lc.sign[static_cast<std::size_t>(A)];
    fill_extrema(out, A, lc.at(A), m - lo.at(A), k, 1 / std::sqrt(static_cast<double>(m)),
                 [&](std::int64_t p, std::int64_t, std::int64_t W, bool mn) { return scan_path(c, p, W, s, mn); });
    return out;
}

LimitSample sample_one(Rng& rng, std::size_t mSteps, std::size_t k)
{
    std::size_t nw = (mSteps + 63) / 64;
    std::vector<std::uint64_t> wf(nw), wg(nw);
    for (auto& x : wf)
        x = rng.next64();
    for (auto& x : wg)
        x = rng.next64();
    auto m = static_cast<std::int64_t>(mSteps);
    auto lf = levels_of(wf, mSteps), lg = levels_of(wg, mSteps);
    std::int64_t A = feasible_level(m, lf, lg);
    LimitSample out;
    out.Tf = static_cast<double>(lf.at(A)) / static_cast<double>(m);
    out.Tg = static_cast<double>(lg.at(A)) / static_cast<double>(m);
    if (A == 0) {
        out.degenerate = true;
        out.x.assign(k + 1, 0.0);
        return out;
    }
    auto ch = choose(m, A, lf, lg);
    out.carrier = ch.carrier;
    out.tie = ch.tie;
    const auto& wc = ch.carrier == Carrier::G ? wg : wf;
    const Levels& lc = ch.carrier == Carrier::G ? lg : lf;
    const Levels& lo = ch.carrier == Carrier::G ? lf : lg;
    int s = lc.sign[static_cast<std::size_t>(A)];
    fill_extrema(out, A, lc.at(A), m - lo.at(A), k, 1 / std::sqrt(static_cast<double>(m)),
                 [&](std::int64_t p, std::int64_t pv, std::int64_t W, bool mn) { return scan(wc, p, pv, W, s, mn); });
    return out;
}

std::vector<LimitSample> sample_limit(std::size_t trials, std::size_t mSteps, std::size_t k, std::uint64_t masterSeed)
{
    if (mSteps == 0)
        throw std::invalid_argument("sample_limit: mSteps must be positive");
    std::vector<LimitSample> out(trials);
    parallel_for(trials, [&](std::size_t i) {
        Rng rng(trial_seed(masterSeed, i));
        out[i] = sample_one(rng, mSteps, k);
    });
    return out;
}

double LimitSample::scaled_support(double C) const { return C * std::sqrt(x.at(0)); }

double LimitSample::scaled_run(std::size_t j, double C) const
{
    if (j == 0 || j >= x.size())
        throw std::out_of_range("scaled_run: need X_j and X_{j+1}");
    double a = j == 1 ? std::sqrt(x[0]) : std::sqrt(x[j - 1] / 2);
    return C / 2 * (a - std::sqrt(x[j] / 2));
}

// ---- piecewise-linear paths ----

namespace {

struct RealView {
    const RealPath& p;
    std::vector<double> runMax; // running max of |values|

    explicit RealView(const RealPath& path) : p(path)
    {
        if (p.values.size() < 2)
            throw std::invalid_argument("RealPath needs at least two points");
        double m = 0;
        for (double v : p.values) {
            m = std::max(m, std::abs(v));
            runMax.push_back(m);
        }
    }
    double N() const { return static_cast<double>(p.values.size() - 1); }
    double value(double t) const
    {
        double x = t * N();
        auto i = static_cast<std::size_t>(std::floor(x));
        if (i >= p.values.size() - 1)
            return p.values.back();
        double fr = x - static_cast<double>(i);
        return p.values[i] + fr * (p.values[i + 1] - p.values[i]);
    }
    double max_abs() const { return runMax.back(); }
    double first_hit(double a) const
    {
        if (a <= 0)
            return 0;
        auto it = std::lower_bound(runMax.begin(), runMax.end(), a);
        if (it == runMax.end())
            return std::numeric_limits<double>::infinity();
        auto i = static_cast<std::size_t>(it - runMax.begin());
        if (i == 0)
            return 0;
        double v0 = p.values[i - 1], v1 = p.values[i];
        double target = v1 > 0 ? a : -a;
        return (static_cast<double>(i - 1) + (target - v0) / (v1 - v0)) / N();
    }
    double max_abs_until(double t) const
    {
        auto i = static_cast<std::size_t>(std::floor(std::min(t, 1.0) * N()));
        return std::max(runMax[std::min(i, runMax.size() - 1)], std::abs(value(t)));
    }
    // Earliest extremum of s*v on [t0, t1].
    std::pair<double, double> extreme(double t0, double t1, int s, bool wantMin) const
    {
        double bestV = s * value(t0), bestT = t0;
        auto better = [&](double v) { return wantMin ? v < bestV : v > bestV; };
        auto i0 = static_cast<std::size_t>(std::floor(t0 * N())) + 1;
        for (std::size_t i = i0; i < p.values.size() && static_cast<double>(i) / N() < t1; ++i) {
            double v = s * p.values[i];
            if (better(v)) {
                bestV = v;
                bestT = static_cast<double>(i) / N();
            }
        }
        if (better(s * value(t1))) {
            bestV = s * value(t1);
            bestT = t1;
        }
        return {bestV, bestT};
    }
};

HittingResult real_hitting(const RealView& f, const RealView* g)
{
    auto phi = [&](double a) { return f.first_hit(a) + (g ? g->first_hit(a) : 0.0); };
    double amax = g ? std::min(f.max_abs(), g->max_abs()) : f.max_abs();
    double x1;
    if (phi(amax) <= 1) {
        x1 = amax;
    } else {
        double lo = 0, hi = amax;
        for (int it = 0; it < 200 && hi - lo > 1e-15 * (1 + hi); ++it) {
            double mid = (lo + hi) / 2;
            (phi(mid) <= 1 ? lo : hi) = mid;
        }
        x1 = lo;
    }
    HittingResult h;
    h.x1 = x1;
    h.degenerate = x1 <= 0;
    h.Tf = f.first_hit(x1);
    h.Tg = g ? g->first_hit(x1) : 0.0;
    return h;
}

} // namespace

HittingResult hitting_functional(const RealPath& f, const RealPath* g)
{
    RealView vf(f);
    if (!g)
        return real_hitting(vf, nullptr);
    RealView vg(*g);
    return real_hitting(vf, &vg);
}

LimitSample alternating_extrema(const RealPath& f, const RealPath& g, std::size_t k)
{
    RealView vf(f), vg(g);
    auto h = real_hitting(vf, &vg);
    LimitSample out;
    out.Tf = h.Tf;
    out.Tg = h.Tg;
    out.degenerate = h.degenerate;
    if (h.degenerate) {
        out.x.assign(k + 1, 0.0);
        return out;
    }
    double tol = 1e-9 * (1 + h.x1);
    double exG = vg.max_abs_until(1 - h.Tf) - h.x1;
    double exF = vf.max_abs_until(1 - h.Tg) - h.x1;
    bool cg = exG <= tol, cf = exF <= tol;
    if (cg != cf) {
        out.carrier = cg ? Carrier::G : Carrier::F;
    } else {
        out.tie = true;
        out.carrier = exG <= exF ? Carrier::G : Carrier::F;
    }
    const RealView& c = out.carrier == Carrier::G ? vg : vf;
    double tc = out.carrier == Carrier::G ? h.Tg : h.Tf;
    double W = 1 - (out.carrier == Carrier::G ? h.Tf : h.Tg);
    int s = c.value(tc) >= 0 ? 1 : -1;
    double u = h.x1, p = tc;
    out.x.push_back(h.x1);
    while (out.x.size() < k + 1) {
        auto [mv, my] = c.extreme(p, W, s, true);
        out.x.push_back(u - mv);
        if (out.x.size() == k + 1)
            break;
        auto [uv, uz] = c.extreme(my, W, s, false);
        out.x.push_back(uv - mv);
        u = uv;
        p = uz;
    }
    return out;
}

} // namespace erosim
