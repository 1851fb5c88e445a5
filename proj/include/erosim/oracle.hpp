#pragma once

#include <cstdint>
#include <vector>

#include "erosim/rng.hpp"

namespace erosim {

// +-1 walk of m steps; values[i] at time i/m, read with scale 1/sqrt(m).
struct DiscretePath {
    std::vector<std::int32_t> values;

    std::size_t steps() const { return values.empty() ? 0 : values.size() - 1; }
    // Consumes ceil(m/64) words; step i uses bit i%64 of word i/64 (1 = up).
    static DiscretePath random(Rng& rng, std::size_t m);
    static DiscretePath from_words(const std::vector<std::uint64_t>& words, std::size_t m);
};

// Piecewise-linear path on [0,1] through values[i] at time i/N.
struct RealPath {
    std::vector<double> values;
};

struct HittingResult {
    double x1 = 0;
    double Tf = 0;
    double Tg = 0;
    std::int64_t level = 0;  // discrete paths: the integer level behind x1
    bool degenerate = false; // no positive level is feasible
};

HittingResult hitting_functional(const DiscretePath& f, const DiscretePath& g);
// g == nullptr means the second hitting time is identically zero.
HittingResult hitting_functional(const RealPath& f, const RealPath* g);

enum class Carrier { G, F }; // G: event A (g carries the extrema); F: event A'

struct LimitSample {
    std::vector<double> x; // X_1, X_2, ..., X_{k+1}
    Carrier carrier = Carrier::G;
    double Tf = 0;
    double Tg = 0;
    bool tie = false;
    bool degenerate = false;

    // C sqrt(X_1), the limit of S(n)/n^{1/4}
    double scaled_support(double C) const;
    // Limit of E(n,j)/n^{1/4}, j = 1..k
    double scaled_run(std::size_t j, double C) const;
};

LimitSample alternating_extrema(const DiscretePath& f, const DiscretePath& g, std::size_t k);
LimitSample alternating_extrema(const RealPath& f, const RealPath& g, std::size_t k);

// One sample from two fresh walks of m steps drawn as in DiscretePath::random
// (f first). Equal to alternating_extrema on those paths, without storing them.
LimitSample sample_one(Rng& rng, std::size_t m, std::size_t k);

std::vector<LimitSample> sample_limit(std::size_t trials, std::size_t mSteps, std::size_t k, std::uint64_t masterSeed);

} // namespace erosim
