#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

namespace erosim {

// Exploration marker: 1-based microstep index and segment type. Type 'E'
// closes a segment started from a symmetric state (k,k); 'F' closes one
// started from an asymmetric state.
struct ExplorationMark {
    std::uint64_t step;
    char type;
    bool operator==(const ExplorationMark&) const = default;
};

// Sign of every martingale increment (1 = +2, 0 = -2), packed 8 per byte,
// LSB first, plus the exploration markers.
//
// Binary layout (little endian):
//   "EROSIM-TRAJ v1\n"
//   u64 length; ceil(length/8) bytes of bits
//   u64 count; count x (u64 step, u8 type)
struct Trajectory {
    std::vector<std::uint8_t> bytes;
    std::uint64_t length = 0;
    std::vector<ExplorationMark> marks;

    void append(std::uint64_t word, int k);
    bool at(std::uint64_t i) const { return (bytes[i >> 3] >> (i & 7)) & 1; }

    void write(std::ostream& os) const;
    static Trajectory read(std::istream& is);

    bool operator==(const Trajectory&) const = default;
};

// Martingale path M^0..M^T rebuilt from a trajectory (post-adjustment values).
std::vector<std::int64_t> martingale_path(const Trajectory& tr);

struct ExcursionDecomposition {
    std::vector<std::int64_t> pathE;              // concatenated E segments, starts at 0
    std::vector<std::int64_t> pathF;              // oriented, translated F segments, starts at 0
    std::vector<std::uint64_t> boundariesE;       // index in pathE where segment k ends
    std::vector<std::uint64_t> boundariesF;       // index in pathF where segment k ends
    std::vector<std::int64_t> offsetsF;           // translation of F segment k
};

// Throws std::invalid_argument if the boundary values are not the levels
// (k+1)(k+2) and (k+2)^2-1.
ExcursionDecomposition decompose_excursions(const Trajectory& tr);

// Inverse of decompose_excursions.
Trajectory reconstruct(const ExcursionDecomposition& d);

} // namespace erosim
