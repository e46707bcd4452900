#pragma once
#include <cstdint>
#include <cmath>

namespace sinrperc {

// Counter-based generator: every draw is a hash of (key, counter), so any
// draw can be reproduced without replaying the stream and parallel consumers
// never share state.  Mixing function is the splitmix64 finalizer.

inline constexpr std::uint64_t GOLDEN64 = 0x9e3779b97f4a7c15ull;

inline std::uint64_t mix64(std::uint64_t x) {
    x ^= x >> 30; x *= 0xbf58476d1ce4e5b9ull;
    x ^= x >> 27; x *= 0x94d049bb133111ebull;
    x ^= x >> 31;
    return x;
}

// Stable derivation of sub-keys: seed -> per-purpose stream, or
// (base, i, j) -> per-replicate seed.
inline std::uint64_t derive(std::uint64_t a, std::uint64_t b) {
    return mix64(a + GOLDEN64 * (b + 1));
}
inline std::uint64_t derive(std::uint64_t a, std::uint64_t b, std::uint64_t c) {
    return derive(derive(a, b), c);
}

class StreamRng {
public:
    StreamRng(std::uint64_t seed, std::uint64_t stream)
        : key_(derive(seed, stream)), ctr_(0) {}

    std::uint64_t next_u64() { return mix64(key_ + GOLDEN64 * ++ctr_); }

    // uniform in [0,1) with 53 random bits
    double next_double() { return double(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }

    // exact inversion-by-multiplication, chunked so exp() never underflows
    long poisson(double mean) {
        long total = 0;
        while (mean > 0) {
            double m = mean < 500.0 ? mean : 500.0;
            mean -= m;
            double limit = std::exp(-m), prod = next_double();
            long k = 0;
            while (prod > limit) { prod *= next_double(); ++k; }
            total += k;
        }
        return total;
    }

private:
    std::uint64_t key_;
    std::uint64_t ctr_;
};

// stream tags (one per purpose, never reused across purposes)
namespace streams {
inline constexpr std::uint64_t positions = 1;
inline constexpr std::uint64_t powers    = 2;
inline constexpr std::uint64_t count     = 3;
inline constexpr std::uint64_t root_pick = 4;
inline constexpr std::uint64_t misc      = 5;
}

}  // namespace sinrperc
