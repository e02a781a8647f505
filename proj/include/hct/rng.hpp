#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <string_view>

namespace hct {

// Seed discipline: replicate i of an experiment draws from the substream
//   mix_seed(master_seed, experiment_tag, i).
// The mixing function is fixed: FNV-1a over the tag, then two splitmix64
// steps folding in master and index. Identical inputs give identical
// streams on every platform (mt19937_64 output is fully specified by the
// standard; all variate transforms below are hand-rolled for the same
// reason).

inline std::uint64_t splitmix64_next(std::uint64_t& state) {
    state += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

inline std::uint64_t fnv1a64(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

inline std::uint64_t mix_seed(std::uint64_t master, std::string_view tag, std::uint64_t index) {
    std::uint64_t state = master ^ fnv1a64(tag);
    std::uint64_t a = splitmix64_next(state);
    state ^= index;
    std::uint64_t b = splitmix64_next(state);
    return a ^ (b + 0x9e3779b97f4a7c15ull);
}

class Rng {
  public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    // Uniform on [0,1) with 53 random bits.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // Integer in [0, n).
    std::uint64_t below(std::uint64_t n) {
        // Rejection-free enough for our n (bias < 2^-53 relative).
        return static_cast<std::uint64_t>(uniform() * static_cast<double>(n)) % n;
    }

    // Poisson count by the product-of-uniforms method, chunked so the
    // threshold exp(-lambda) never underflows for the means we use.
    long poisson(double mean) {
        long total = 0;
        while (mean > 0) {
            double chunk = mean > 500.0 ? 500.0 : mean;
            mean -= chunk;
            double limit = std::exp(-chunk);
            double prod = 1.0;
            long k = -1;
            do {
                ++k;
                prod *= uniform();
            } while (prod > limit);
            total += k;
        }
        return total;
    }

  private:
    std::mt19937_64 engine_;
};

}  // namespace hct
