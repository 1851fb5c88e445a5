#pragma once

#include <cstdint>
#include <iosfwd>
#include <random>

namespace erosim {

// splitmix64 finalizer.
std::uint64_t mix64(std::uint64_t x);

// Seed for trial `index` of an experiment seeded with `master`.
std::uint64_t trial_seed(std::uint64_t master, std::uint64_t index);

// 64-bit generator with a bit buffer. Bits are handed out LSB first, so
// bits(k) yields the same stream as k calls to bits(1).
class Rng {
public:
    explicit Rng(std::uint64_t seed = 0) : eng_(mix64(seed)) {}

    std::uint64_t next64() { return eng_(); }

    std::uint64_t bits(int k)
    {
        if (avail_ >= k) {
            std::uint64_t r = k == 64 ? buf_ : buf_ & ((std::uint64_t{1} << k) - 1);
            buf_ = k == 64 ? 0 : buf_ >> k;
            avail_ -= k;
            return r;
        }
        std::uint64_t r = buf_;
        int need = k - avail_;
        std::uint64_t w = eng_();
        r |= (need == 64 ? w : w & ((std::uint64_t{1} << need) - 1)) << avail_;
        buf_ = need == 64 ? 0 : w >> need;
        avail_ = 64 - need;
        return r;
    }

    bool bit() { return bits(1) != 0; }

    // Uniform on [0, n), n >= 1. Rejection keeps it exact and portable.
    std::uint64_t below(std::uint64_t n)
    {
        std::uint64_t t = (0 - n) % n;
        std::uint64_t x;
        do {
            x = eng_();
        } while (x < t);
        return x % n;
    }

    double uniform01() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    void save(std::ostream& os) const;
    void load(std::istream& is);

    bool operator==(const Rng& o) const
    {
        return eng_ == o.eng_ && buf_ == o.buf_ && avail_ == o.avail_;
    }

private:
    std::mt19937_64 eng_;
    std::uint64_t buf_ = 0;
    int avail_ = 0;
};

} // namespace erosim
