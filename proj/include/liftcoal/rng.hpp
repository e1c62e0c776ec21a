#ifndef LIFTCOAL_RNG_HPP
#define LIFTCOAL_RNG_HPP

#include <cstdint>
#include <random>
#include <string>

namespace liftcoal {

inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Counter-based substream derivation: (seed, replicate) -> independent
/// mt19937_64 stream. Identical inputs give bit-identical streams
/// regardless of how replicates are scheduled across threads.
struct RngSpec {
    std::uint64_t seed = 0;

    static constexpr const char* kAlgorithm = "mt19937_64/splitmix64";

    std::mt19937_64 stream(std::uint64_t replicate) const {
        std::uint64_t s = seed ^ (0x517cc1b727220a95ULL * (replicate + 1));
        std::uint64_t a = splitmix64(s);
        std::uint64_t b = splitmix64(s);
        std::uint64_t c = splitmix64(s);
        std::seed_seq seq{static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(a >> 32),
                          static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(b >> 32),
                          static_cast<std::uint32_t>(c), static_cast<std::uint32_t>(c >> 32)};
        return std::mt19937_64(seq);
    }

    std::string describe() const {
        return std::string(kAlgorithm) + " seed=" + std::to_string(seed);
    }
};

}  // namespace liftcoal

#endif
