#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "textnet/errors.hpp"

namespace textnet {

// splitmix64 step; used to derive independent member seeds from a master seed.
inline uint64_t splitmix64(uint64_t& state) {
    uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

inline uint64_t derive_seed(uint64_t master, uint64_t index) {
    uint64_t s = master + 0x632be59bd9b4e019ull * (index + 1);
    uint64_t a = splitmix64(s);
    uint64_t b = splitmix64(s);
    return a ^ (b << 1);
}

// Deterministic RNG built on mt19937_64. The std distributions are not
// bit-portable across standard libraries, so every sampler here is our own.
class rng {
public:
    explicit rng(uint64_t seed) : eng_(seed) {}

    uint64_t next_u64() { return eng_(); }

    // Unbiased integer in [0, bound) by rejection.
    uint64_t uniform_below(uint64_t bound) {
        if (bound == 0) throw invariant_error("uniform_below: bound must be positive");
        uint64_t threshold = (0 - bound) % bound;
        for (;;) {
            uint64_t r = eng_();
            if (r >= threshold) return r % bound;
        }
    }

    // Uniform double in [0,1) with 53 random bits.
    double uniform01() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    // Uniform double in (0,1); rejects exact zero so inverse-CDF samplers are safe.
    double uniform01_open() {
        for (;;) {
            double u = uniform01();
            if (u > 0.0) return u;
        }
    }

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (size_t i = v.size(); i > 1; --i) {
            size_t j = static_cast<size_t>(uniform_below(i));
            std::swap(v[i - 1], v[j]);
        }
    }

    // k distinct indices from [0, n), order of draw preserved.
    std::vector<size_t> sample_without_replacement(size_t n, size_t k) {
        if (k > n)
            throw validation_error("sample_without_replacement: k exceeds population size");
        std::vector<size_t> pool(n);
        for (size_t i = 0; i < n; ++i) pool[i] = i;
        std::vector<size_t> out;
        out.reserve(k);
        size_t remaining = n;
        for (size_t i = 0; i < k; ++i) {
            size_t j = static_cast<size_t>(uniform_below(remaining));
            out.push_back(pool[j]);
            pool[j] = pool[remaining - 1];
            --remaining;
        }
        return out;
    }

    double normal(double mean = 0.0, double stddev = 1.0);
    double gamma(double shape, double scale = 1.0);

private:
    std::mt19937_64 eng_;
};

}  // namespace textnet
