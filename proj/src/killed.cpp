#include "erosim/killed.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "erosim/parallel.hpp"
#include "erosim/rng.hpp"
#include "erosim/state.hpp"

namespace erosim {

bool monochromatic_opposite(const SiteColoring& c)
{
    if (!c.monochromatic(Side::East) || !c.monochromatic(Side::West))
        return false;
    Color e = c.adjacent(Side::East), w = c.adjacent(Side::West);
    return e == Color::None || w == Color::None || e != w;
}

KilledOutcome run_killed(std::int64_t L, Color eastColor, Color first, std::uint64_t seed)
{
    if (L < 1)
        throw std::invalid_argument("run_killed: L must be positive");
    std::vector<Color> e(static_cast<std::size_t>(L), eastColor), w(static_cast<std::size_t>(L), opposite(eastColor));
    auto s = state_from_coloring(SiteColoring::from_sites(e, w), first, seed, {false, false, false});
    KilledOutcome out;
    out.exitSite = run_until_exploration(s);
    out.particles = s.particles;
    out.microsteps = static_cast<std::uint64_t>(s.microsteps);
    auto east = s.coloring.sites(Side::East), west = s.coloring.sites(Side::West);
    east.resize(static_cast<std::size_t>(L));
    west.resize(static_cast<std::size_t>(L));
    out.finalColoring = SiteColoring::from_sites(east, west);
    return out;
}

ConstantsTable w_recursion(std::size_t K)
{
    ConstantsTable t;
    t.w.push_back(mpq_class(1));
    t.partialSums.push_back(mpq_class(0));
    for (std::size_t i = 1; i <= K; ++i) {
        mpz_class k(static_cast<unsigned long>(i));
        mpq_class next = t.w.back() * mpq_class((k + 1) * (k + 2), k * k) - mpq_class(1, k);
        next.canonicalize();
        t.w.push_back(next);
        mpq_class term(1, k * (k + 1) * (k + 1) * (k + 2));
        term.canonicalize();
        t.partialSums.push_back(t.partialSums.back() + term);
    }
    return t;
}

namespace {

constexpr unsigned kBits = 256;

// Bracket for the series sum: [S_k, S_k + 1/(3k^3)], tightened until the
// induced bracket for alpha is narrower than `width`.
void alpha_bracket(double width, mpf_class& lo, mpf_class& hi, std::uint64_t& terms)
{
    mpf_class sum(0, kBits), half(0.5, kBits);
    for (std::uint64_t j = 1;; ++j) {
        mpf_class jj(static_cast<double>(j), kBits);
        sum += mpf_class(1, kBits) / (jj * (jj + 1) * (jj + 1) * (jj + 2));
        if (j % 64 != 0)
            continue;
        mpf_class tail = mpf_class(1, kBits) / (3 * jj * jj * jj);
        lo = mpf_class(1, kBits) / (half - sum);
        hi = mpf_class(1, kBits) / (half - sum - tail);
        if (mpf_class(hi - lo).get_d() < width) {
            terms = j;
            return;
        }
    }
}

CertifiedValue pack(const mpf_class& lo, const mpf_class& hi, std::uint64_t terms)
{
    CertifiedValue v;
    v.lo = std::nextafter(lo.get_d(), -std::numeric_limits<double>::infinity());
    v.hi = std::nextafter(hi.get_d(), std::numeric_limits<double>::infinity());
    v.value = mpf_class((lo + hi) / 2).get_d();
    v.terms = terms;
    return v;
}

} // namespace

CertifiedValue alpha(double tolerance)
{
    if (!(tolerance > 0))
        throw std::invalid_argument("alpha: tolerance must be positive");
    mpf_class lo(0, kBits), hi(0, kBits);
    std::uint64_t terms = 0;
    alpha_bracket(tolerance / 2, lo, hi, terms);
    return pack(lo, hi, terms);
}

CertifiedValue C_constant(double tolerance)
{
    if (!(tolerance > 0))
        throw std::invalid_argument("C_constant: tolerance must be positive");
    mpf_class lo(0, kBits), hi(0, kBits);
    std::uint64_t terms = 0;
    // dC/dalpha = C/(4 alpha) < 1, so an alpha bracket of width tol/2 suffices.
    alpha_bracket(tolerance / 2, lo, hi, terms);
    mpf_class clo = sqrt(sqrt(mpf_class(64 * lo, kBits)));
    mpf_class chi = sqrt(sqrt(mpf_class(64 * hi, kBits)));
    return pack(clo, chi, terms);
}

RatioEstimate estimate_ratio(std::int64_t L, std::uint64_t trials, std::uint64_t seed)
{
    if (trials == 0)
        throw std::invalid_argument("estimate_ratio: need at least one trial");
    std::vector<std::uint64_t> r(trials), q(trials);
    parallel_for(trials, [&](std::size_t i) {
        auto o = run_killed(L, Color::Blue, Color::Blue, trial_seed(seed, i));
        r[i] = o.particles;
        q[i] = o.microsteps;
    });
    double n = static_cast<double>(trials);
    double sr = 0, sq = 0, srr = 0, sqq = 0, srq = 0;
    for (std::uint64_t i = 0; i < trials; ++i) {
        double a = static_cast<double>(r[i]), b = static_cast<double>(q[i]);
        sr += a;
        sq += b;
        srr += a * a;
        sqq += b * b;
        srq += a * b;
    }
    RatioEstimate e;
    e.trials = trials;
    e.meanR = sr / n;
    e.meanQ = sq / n;
    double vr = srr / n - e.meanR * e.meanR, vq = sqq / n - e.meanQ * e.meanQ;
    double cov = srq / n - e.meanR * e.meanQ;
    e.seR = std::sqrt(std::max(vr, 0.0) / n);
    e.seQ = std::sqrt(std::max(vq, 0.0) / n);
    e.ratio = e.meanR / e.meanQ;
    double rr = e.ratio;
    double vratio = (vr - 2 * rr * cov + rr * rr * vq) / (e.meanQ * e.meanQ);
    e.seRatio = std::sqrt(std::max(vratio, 0.0) / n);
    return e;
}

} // namespace erosim
