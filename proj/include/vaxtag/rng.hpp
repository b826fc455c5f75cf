#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace vaxtag {

// Seeded 64-bit generator with a pinned bounded-draw algorithm so that
// shuffles and samples reproduce bit-for-bit across platforms.
// mt19937_64 output is fully specified by the standard; the rejection
// sampling below avoids the unspecified std::uniform_int_distribution.
class Rng {
public:
    explicit Rng(uint64_t seed) : engine_(seed) {}

    uint64_t next() { return engine_(); }

    /// Unbiased draw from [0, n). n must be > 0.
    uint64_t bounded(uint64_t n) {
        const uint64_t threshold = (~n + 1) % n; // 2^64 mod n
        for (;;) {
            uint64_t x = next();
            if (x >= threshold) return x % n;
        }
    }

    double unit() { // [0, 1)
        return static_cast<double>(next() >> 11) * (1.0 / 9007199254740992.0);
    }

    /// Fisher-Yates, back to front.
    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (size_t i = v.size(); i > 1; --i) {
            size_t j = static_cast<size_t>(bounded(i));
            std::swap(v[i - 1], v[j]);
        }
    }

private:
    std::mt19937_64 engine_;
};

} // namespace vaxtag
