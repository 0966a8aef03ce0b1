#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

namespace srlab {

// SplitMix64 output function. Used as a counter-based generator: every draw is
// keyed by (seed, counter), so results never depend on iteration order and
// disjoint work ranges can be evaluated in parallel with identical output.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t counter_hash(std::uint64_t seed, std::uint64_t counter) {
    return splitmix64(seed + 0x632be59bd9b4e019ULL * (counter + 1));
}

inline std::uint64_t counter_hash(std::uint64_t seed, std::uint64_t i, std::uint64_t j) {
    return splitmix64(splitmix64(seed + 0x632be59bd9b4e019ULL * (i + 1)) + 0x9e3779b97f4a7c15ULL * (j + 1));
}

// uniform double in [0, 1)
inline double to_unit(std::uint64_t x) { return static_cast<double>(x >> 11) * 0x1.0p-53; }

// Sequential deterministic stream for places where a counter key is unnatural
// (shuffles, rejection sampling). Not std::mt19937: output must be identical
// across platforms including the integer-range reduction.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        state_ += 0x9e3779b97f4a7c15ULL;
        std::uint64_t x = state_;
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
        return x ^ (x >> 31);
    }

    // uniform in [0, n) by rejection; exact and platform-independent
    std::uint64_t below(std::uint64_t n) {
        std::uint64_t limit = ~std::uint64_t(0) - (~std::uint64_t(0) % n);
        std::uint64_t x;
        do {
            x = next();
        } while (x >= limit);
        return x % n;
    }

    int range(int lo, int hi) {  // inclusive bounds
        return lo + static_cast<int>(below(static_cast<std::uint64_t>(hi - lo + 1)));
    }

    double unit() { return to_unit(next()); }

    // k distinct values from [0, n), ascending
    std::vector<int> sample_indices(int n, int k) {
        std::vector<int> pool(n);
        for (int i = 0; i < n; ++i) pool[i] = i;
        for (int i = 0; i < k; ++i) {
            int j = i + static_cast<int>(below(static_cast<std::uint64_t>(n - i)));
            std::swap(pool[i], pool[j]);
        }
        pool.resize(k);
        std::sort(pool.begin(), pool.end());
        return pool;
    }

  private:
    std::uint64_t state_;
};

}  // namespace srlab
