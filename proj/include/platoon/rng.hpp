#ifndef PLATOON_RNG_HPP
#define PLATOON_RNG_HPP

#include <cstdint>
#include <random>

namespace platoon {

/// Counter-based fan-out: one top-level seed plus a stream id yields an
/// independent, reproducible engine per parallel unit of work.
inline std::mt19937_64 seeded_stream(std::uint64_t seed, std::uint64_t stream) {
    // splitmix64 over (seed, stream)
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    z = z ^ (z >> 31);
    return std::mt19937_64(z);
}

/// k-th term of the van der Corput sequence in the given base.
inline double van_der_corput(std::uint64_t k, std::uint64_t base) {
    double q = 0.0, bk = 1.0 / static_cast<double>(base);
    while (k > 0) {
        q += static_cast<double>(k % base) * bk;
        k /= base;
        bk /= static_cast<double>(base);
    }
    return q;
}

}  // namespace platoon

#endif  // PLATOON_RNG_HPP
