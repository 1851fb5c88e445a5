#pragma once

#include <cstdint>
#include <vector>

#include <gmpxx.h>

#include "erosim/coloring.hpp"

namespace erosim {

struct KilledOutcome {
    std::uint64_t particles = 0;  // includes the particle that exits
    std::uint64_t microsteps = 0; // includes the exit step
    std::int64_t exitSite = 0;    // +-(L+1)
    SiteColoring finalColoring;   // restricted to [-L, L]
};

// Starts from [1,L] = eastColor, [-L,-1] = opposite, walkers alternating from
// `first`; ends at the first step outside [-L, L].
KilledOutcome run_killed(std::int64_t L, Color eastColor, Color first, std::uint64_t seed);

bool monochromatic_opposite(const SiteColoring& c);

struct ConstantsTable {
    std::vector<mpq_class> w;           // w_0..w_K
    std::vector<mpq_class> partialSums; // sum_{j=1}^k 1/(j(j+1)^2(j+2)), k = 0..K
};

ConstantsTable w_recursion(std::size_t K);

struct CertifiedValue {
    double value;
    double lo;
    double hi;
    std::uint64_t terms; // series terms summed
    double error() const { return hi - lo; }
};

CertifiedValue alpha(double tolerance);
CertifiedValue C_constant(double tolerance);

struct RatioEstimate {
    double meanR = 0, meanQ = 0, ratio = 0;
    double seR = 0, seQ = 0, seRatio = 0;
    std::uint64_t trials = 0;
};

RatioEstimate estimate_ratio(std::int64_t L, std::uint64_t trials, std::uint64_t seed);

} // namespace erosim
