#ifndef SPNI_RNG_HPP
#define SPNI_RNG_HPP

#include <cstdint>
#include <initializer_list>

#include "spni/error.hpp"

namespace spni {

// SplitMix64 (Steele, Lea, Flood / Vigna). Chosen because its output
// sequence is published and trivially portable: all draws below are pure
// 64-bit integer arithmetic, so instances and partitionings reproduce
// bit-exactly across platforms.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // Unbiased integer in [0, bound) by rejection sampling.
    std::uint64_t next_below(std::uint64_t bound) {
        if (bound == 0) throw InputError("next_below: bound must be positive");
        const std::uint64_t threshold = (0 - bound) % bound;
        for (;;) {
            const std::uint64_t r = next();
            if (r >= threshold) return r % bound;
        }
    }

    // Uniform double in [0, 1), 53 random bits.
    double next_unit() {
        return static_cast<double>(next() >> 11) * 0x1.0p-53;
    }

private:
    std::uint64_t state_;
};

// Stable seed for a logical task: folds the given words into the master
// seed one SplitMix64 step at a time. Used to give every (iteration, sink)
// job its own generator so results do not depend on worker scheduling.
inline std::uint64_t derive_seed(std::uint64_t master,
                                 std::initializer_list<std::uint64_t> words) {
    std::uint64_t h = master;
    for (std::uint64_t w : words) {
        SplitMix64 mix(h ^ (w + 0x9E3779B97F4A7C15ULL));
        h = mix.next();
    }
    return h;
}

} // namespace spni

#endif
