#pragma once

#include <cstdint>

#include "fdb/scalar.hpp"

namespace fdb {

// splitmix64 (Steele/Lea/Flood). Chosen so the seeded case streams of
// series-check and verify-all can be reproduced in any language from the
// constants alone:
//   state += 0x9E3779B97F4A7C15
//   z = state; z = (z ^ z>>30) * 0xBF58476D1CE4E5B9
//   z = (z ^ z>>27) * 0x94D049BB133111EB; return z ^ z>>31
// Bounded draws use plain modulo: below(n) = next() % n.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    std::uint64_t below(std::uint64_t n) { return next() % n; }

    // inclusive bounds
    std::int64_t range(std::int64_t lo, std::int64_t hi) {
        return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo + 1)));
    }

    // nonzero numerator in [-mag, mag], denominator in [1, den_max]
    Rat rational(int mag, int den_max) {
        std::int64_t num = range(1, mag);
        if (next() & 1) num = -num;
        return Rat(num, range(1, den_max));
    }

private:
    std::uint64_t state_;
};

}  // namespace fdb
