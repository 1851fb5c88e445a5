#include "erosim/trajectory.hpp"

#include <cstring>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>

namespace erosim {

namespace {

const char kMagic[] = "EROSIM-TRAJ v1\n";

int sgn(std::int64_t v) { return (v > 0) - (v < 0); }

void put_u64(std::ostream& os, std::uint64_t v)
{
    unsigned char b[8];
    for (int i = 0; i < 8; ++i)
        b[i] = static_cast<unsigned char>(v >> (8 * i));
    os.write(reinterpret_cast<const char*>(b), 8);
}

std::uint64_t get_u64(std::istream& is)
{
    unsigned char b[8];
    if (!is.read(reinterpret_cast<char*>(b), 8))
        throw std::runtime_error("trajectory: truncated");
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i)
        v |= static_cast<std::uint64_t>(b[i]) << (8 * i);
    return v;
}

struct Segment {
    std::vector<std::int64_t> values; // start value .. pre-adjustment end value
    bool closed = false;
};

std::int64_t site_of_mark(std::size_t j) { return static_cast<std::int64_t>(j / 2 + 1); }

std::int64_t level_of_mark(std::size_t j)
{
    auto k = static_cast<std::int64_t>(j / 2);
    return j % 2 == 0 ? (k + 1) * (k + 2) : (k + 2) * (k + 2) - 1;
}

std::vector<Segment> split(const Trajectory& tr)
{
    std::vector<Segment> segs(1);
    segs[0].values.push_back(0);
    std::int64_t m = 0;
    std::size_t j = 0;
    for (std::uint64_t i = 1; i <= tr.length; ++i) {
        m += tr.at(i - 1) ? 2 : -2;
        segs.back().values.push_back(m);
        if (j < tr.marks.size() && tr.marks[j].step == i) {
            char want = j % 2 == 0 ? 'E' : 'F';
            if (tr.marks[j].type != want)
                throw std::invalid_argument("trajectory: marks out of order");
            if (std::abs(m) != level_of_mark(j))
                throw std::invalid_argument("trajectory: wrong boundary value at mark " + std::to_string(j));
            segs.back().closed = true;
            m -= sgn(m) * site_of_mark(j);
            segs.push_back({});
            segs.back().values.push_back(m);
            ++j;
        }
    }
    if (j != tr.marks.size())
        throw std::invalid_argument("trajectory: mark beyond the end");
    return segs;
}

} // namespace

void Trajectory::append(std::uint64_t word, int k)
{
    for (int i = 0; i < k; ++i) {
        if ((length & 7) == 0)
            bytes.push_back(0);
        if ((word >> i) & 1)
            bytes.back() |= static_cast<std::uint8_t>(1u << (length & 7));
        ++length;
    }
}

void Trajectory::write(std::ostream& os) const
{
    os.write(kMagic, sizeof(kMagic) - 1);
    put_u64(os, length);
    os.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    put_u64(os, marks.size());
    for (const auto& m : marks) {
        put_u64(os, m.step);
        os.put(m.type);
    }
}

Trajectory Trajectory::read(std::istream& is)
{
    char magic[sizeof(kMagic) - 1];
    if (!is.read(magic, sizeof(magic)) || std::memcmp(magic, kMagic, sizeof(magic)) != 0)
        throw std::runtime_error("trajectory: bad header");
    Trajectory tr;
    tr.length = get_u64(is);
    tr.bytes.resize((tr.length + 7) / 8);
    if (!is.read(reinterpret_cast<char*>(tr.bytes.data()), static_cast<std::streamsize>(tr.bytes.size())))
        throw std::runtime_error("trajectory: truncated");
    std::uint64_t n = get_u64(is);
    for (std::uint64_t i = 0; i < n; ++i) {
        std::uint64_t step = get_u64(is);
        int type = is.get();
        if (type != 'E' && type != 'F')
            throw std::runtime_error("trajectory: bad mark");
        tr.marks.push_back({step, static_cast<char>(type)});
    }
    return tr;
}

std::vector<std::int64_t> martingale_path(const Trajectory& tr)
{
    std::vector<std::int64_t> out;
    out.reserve(tr.length + 1);
    out.push_back(0);
    std::int64_t m = 0;
    std::size_t j = 0;
    for (std::uint64_t i = 1; i <= tr.length; ++i) {
        m += tr.at(i - 1) ? 2 : -2;
        if (j < tr.marks.size() && tr.marks[j].step == i) {
            m -= sgn(m) * site_of_mark(j);
            ++j;
        }
        out.push_back(m);
    }
    return out;
}

ExcursionDecomposition decompose_excursions(const Trajectory& tr)
{
    auto segs = split(tr);
    ExcursionDecomposition d;
    int sE = 1, sF = 0;
    std::int64_t c = -1;
    std::int64_t prevRawEndF = 0;
    for (std::size_t j = 0; j < segs.size(); ++j) {
        const auto& v = segs[j].values;
        if (j % 2 == 0) {
            if (j > 0)
                sE = sgn(d.pathE.back()) * sgn(v.front());
            for (std::size_t i = j == 0 ? 0 : 1; i < v.size(); ++i)
                d.pathE.push_back(sE * v[i]);
            if (segs[j].closed)
                d.boundariesE.push_back(d.pathE.size() - 1);
        } else {
            if (j == 1) {
                sF = sgn(v.front());
            } else {
                int sigma = sF * sgn(prevRawEndF);
                c -= sigma;
                sF = sigma * sgn(v.front());
            }
            if (j == 1)
                d.pathF.push_back(sF * v.front() + c);
            for (std::size_t i = 1; i < v.size(); ++i)
                d.pathF.push_back(sF * v[i] + c);
            d.offsetsF.push_back(c);
            if (segs[j].closed) {
                d.boundariesF.push_back(d.pathF.size() - 1);
                prevRawEndF = v.back();
            }
        }
    }
    return d;
}

Trajectory reconstruct(const ExcursionDecomposition& d)
{
    Trajectory tr;
    std::size_t nE = d.boundariesE.size(), nF = d.boundariesF.size();
    if (nF > nE || nE > nF + 1 || d.pathE.empty())
        throw std::invalid_argument("reconstruct: inconsistent segment counts");
    std::int64_t rawEnd = 0, prevRawEndF = 0, c = -1;
    int sF = 0;
    std::uint64_t steps = 0;
    for (std::size_t j = 0;; ++j) {
        std::size_t k = j / 2;
        bool isE = j % 2 == 0;
        const auto& path = isE ? d.pathE : d.pathF;
        const auto& bounds = isE ? d.boundariesE : d.boundariesF;
        if (path.empty())
            throw std::invalid_argument("reconstruct: missing segment");
        bool closed = k < bounds.size();
        std::size_t from = k == 0 ? 0 : bounds[k - 1];
        std::size_t to = closed ? bounds[k] : path.size() - 1;
        std::int64_t startRaw = j == 0 ? 0 : rawEnd - sgn(rawEnd) * site_of_mark(j - 1);
        std::vector<std::int64_t> raw;
        if (isE) {
            int s = j == 0 ? 1 : sgn(path[from]) * sgn(startRaw);
            for (std::size_t i = from; i <= to; ++i)
                raw.push_back(s * path[i]);
        } else {
            if (k == 0) {
                sF = sgn(startRaw);
            } else {
                int sigma = sF * sgn(prevRawEndF);
                c -= sigma;
                sF = sigma * sgn(startRaw);
            }
            for (std::size_t i = from; i <= to; ++i)
                raw.push_back(sF * (path[i] - c));
        }
        if (raw.front() != startRaw)
            throw std::invalid_argument("reconstruct: segment does not start where the last ended");
        for (std::size_t i = 1; i < raw.size(); ++i) {
            std::int64_t dv = raw[i] - raw[i - 1];
            if (dv != 2 && dv != -2)
                throw std::invalid_argument("reconstruct: increment is not +-2");
            tr.append(dv > 0 ? 1 : 0, 1);
        }
        steps += raw.size() - 1;
        if (!closed)
            break;
        rawEnd = raw.back();
        if (std::abs(rawEnd) != level_of_mark(j))
            throw std::invalid_argument("reconstruct: wrong boundary value");
        if (!isE)
            prevRawEndF = rawEnd;
        tr.marks.push_back({steps, isE ? 'E' : 'F'});
    }
    return tr;
}

} // namespace erosim
