#pragma once

#include <cstdint>
#include <random>

namespace rider {

// splitmix64; used to derive independent substream seeds from one root seed.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Stream domains keep per-bin / per-dataset substreams disjoint, so e.g.
// raising the bin count m never perturbs the paths of earlier bins.
enum class StreamDomain : std::uint64_t {
    weight_bin = 0x01,
    dataset = 0x02,
    aux = 0x03,
};

inline std::uint64_t substream_seed(std::uint64_t root, StreamDomain domain,
                                    std::uint64_t index) {
    std::uint64_t h = splitmix64(root ^ (static_cast<std::uint64_t>(domain) << 56));
    return splitmix64(h ^ index);
}

inline std::mt19937_64 make_engine(std::uint64_t root, StreamDomain domain,
                                   std::uint64_t index) {
    return std::mt19937_64(substream_seed(root, domain, index));
}

} // namespace rider
