#pragma once

#include <cstdint>
#include <random>

namespace groupdet {

// SplitMix64 step. Counter-based use (seed ^ mix(index)) gives streams that
// do not depend on how work is partitioned across threads.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Seeded stream with a stdlib-independent integer draw, so that seeded runs
// are reproducible across standard libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    long long uniform(long long lo, long long hi) {
        const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
        return lo + static_cast<long long>(eng_() % span);
    }

    std::uint64_t next() { return eng_(); }

private:
    std::mt19937_64 eng_;
};

}  // namespace groupdet
