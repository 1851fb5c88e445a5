#include "erosim/rng.hpp"

#include <istream>
#include <ostream>
#include <stdexcept>

namespace erosim {

std::uint64_t mix64(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t trial_seed(std::uint64_t master, std::uint64_t index)
{
    return mix64(master ^ mix64(index ^ 0x5851f42d4c957f2dULL));
}

void Rng::save(std::ostream& os) const
{
    os << eng_ << '\n' << buf_ << ' ' << avail_ << '\n';
}

void Rng::load(std::istream& is)
{
    std::mt19937_64 e;
    std::uint64_t b;
    int a;
    if (!(is >> e >> b >> a) || a < 0 || a > 64)
        throw std::runtime_error("rng: bad state");
    eng_ = e;
    buf_ = b;
    avail_ = a;
}

} // namespace erosim
