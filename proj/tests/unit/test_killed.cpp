#include "doctest.h"

#include <cmath>
#include <numbers>

#include "naive.hpp"
#include "erosim/killed.hpp"
#include "erosim/rng.hpp"

using namespace erosim;

namespace {
constexpr Color B = Color::Blue, R = Color::Red;

// Partial fractions: 1/(j(j+1)^2(j+2)) = 1/(2j) - 1/(2(j+2)) - 1/(j+1)^2,
// so the full series is 7/4 - pi^2/6.
long double alpha_closed_form()
{
    long double pi = std::numbers::pi_v<long double>;
    return 1.0L / (pi * pi / 6.0L - 1.25L);
}
} // namespace

TEST_CASE("w recursion small values")
{
    auto t = w_recursion(2);
    CHECK(t.w[0] == 1);
    CHECK(t.w[1] == 5);
    CHECK(t.w[2] == mpq_class(29, 2));
    CHECK(t.w[2] / 36 == mpq_class(1, 2) - mpq_class(1, 12) - mpq_class(1, 72));
}

TEST_CASE("partial fraction form of the summand")
{
    for (long j = 1; j <= 200; ++j) {
        mpq_class lhs(1, j * (j + 1) * (j + 1) * (j + 2));
        mpq_class rhs = mpq_class(1, 2 * j) - mpq_class(1, 2 * (j + 2)) - mpq_class(1, (j + 1) * (j + 1));
        lhs.canonicalize();
        rhs.canonicalize();
        CHECK(lhs == rhs);
    }
}

TEST_CASE("closed-form identity for w_k")
{
    auto t = w_recursion(1000);
    for (std::size_t k = 0; k <= 1000; ++k) {
        mpq_class kk(static_cast<unsigned long>(k));
        mpq_class lhs = t.w[k] / ((kk + 1) * (kk + 1) * (kk + 2)) + t.partialSums[k];
        REQUIRE(lhs == mpq_class(1, 2));
    }
    double a = static_cast<double>(alpha_closed_form());
    CHECK(std::abs(mpq_class(t.w[1000] / 1000000000).get_d() - 1 / a) < 1e-2);
}

TEST_CASE("alpha and C with certified error")
{
    long double a = alpha_closed_form();
    auto al = alpha(1e-10);
    CHECK(al.error() <= 1e-10);
    CHECK(al.lo <= static_cast<double>(a));
    CHECK(al.hi >= static_cast<double>(a));
    CHECK(std::abs(al.value - static_cast<double>(a)) < 1e-10);
    CHECK(std::abs(al.value - 2.5320682208564728) < 1e-10);

    long double c = 2.0L * std::sqrt(2.0L) * std::pow(a, 0.25L);
    auto cc = C_constant(1e-10);
    CHECK(cc.error() <= 1e-10);
    CHECK(std::abs(cc.value - static_cast<double>(c)) < 1e-10);
    CHECK(std::abs(cc.value - 3.5679096164562362) < 1e-10);
    CHECK_THROWS(alpha(0));
}

TEST_CASE("killed process agrees with the site-by-site simulator")
{
    for (std::int64_t L : {1, 2, 4}) {
        for (Color e : {B, R})
            for (Color f : {B, R})
                for (std::uint64_t seed = 0; seed < 50; ++seed) {
                    auto o = run_killed(L, e, f, seed);
                    CHECK(monochromatic_opposite(o.finalColoring));
                    CHECK(std::llabs(o.exitSite) == L + 1);

                    naive::Sim sim;
                    sim.first = f;
                    for (std::int64_t x = 1; x <= L; ++x) {
                        sim.site[x] = e;
                        sim.site[-x] = opposite(e);
                    }
                    Rng rng(seed);
                    std::int64_t p;
                    do {
                        p = sim.particle(rng);
                    } while (std::llabs(p) <= L);
                    CHECK(p == o.exitSite);
                    CHECK(sim.n == o.particles);
                    CHECK(static_cast<std::uint64_t>(sim.t) == o.microsteps);
                }
    }
}

TEST_CASE("killed means at L = 1 and 2")
{
    auto t = w_recursion(2);
    for (std::int64_t L : {1, 2}) {
        auto e = estimate_ratio(L, 100000, 31 + static_cast<std::uint64_t>(L));
        double q = std::pow(L + 1, 3);
        double w = t.w[static_cast<std::size_t>(L)].get_d();
        CHECK(std::abs(e.meanQ - q) <= 3 * e.seQ);
        CHECK(std::abs(e.meanR - w) <= 3 * e.seR);
        if (L == 2)
            CHECK(std::abs(e.meanQ - w) > 10 * e.seQ); // E[Q] is not w_L
    }
    auto e1 = estimate_ratio(1, 50000, 5);
    CHECK(e1.ratio == doctest::Approx(5.0 / 8.0).epsilon(0.02));
}
