#pragma once

#include <cstdint>

namespace fairaudit {

// splitmix64 (Steele, Lea, Flood 2014). Small, fast, and splittable: the
// whole inference layer derives per-replicate streams from it so results
// never depend on execution order or worker count.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        state_ += 0x9E3779B97F4A7C15ULL;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    std::uint32_t next32() { return static_cast<std::uint32_t>(next() >> 32); }

    // Uniform in [0, 1), 53-bit resolution.
    double next_unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    // Unbiased uniform in [0, n); Lemire's multiply-reject method.
    std::uint32_t bounded(std::uint32_t n) {
        std::uint64_t m = static_cast<std::uint64_t>(next32()) * n;
        auto low = static_cast<std::uint32_t>(m);
        if (low < n) {
            const std::uint32_t threshold = static_cast<std::uint32_t>(-n) % n;
            while (low < threshold) {
                m = static_cast<std::uint64_t>(next32()) * n;
                low = static_cast<std::uint32_t>(m);
            }
        }
        return static_cast<std::uint32_t>(m >> 32);
    }

private:
    std::uint64_t state_;
};

inline std::uint64_t mix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

// Decorrelated stream for (seed, stream_id); same pair, same draws, on any
// machine and any thread.
inline SplitMix64 stream_rng(std::uint64_t seed, std::uint64_t stream_id) {
    return SplitMix64(mix64(seed ^ mix64(stream_id + 0x632BE59BD9B4E019ULL)));
}

}  // namespace fairaudit
