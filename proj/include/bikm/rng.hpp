#ifndef BIKM_RNG_HPP
#define BIKM_RNG_HPP

#include <cmath>
#include <cstdint>
#include <vector>

namespace bikm {

// Counter-based splittable generator. Output i of stream s under seed k is a
// pure function of (k, s, i), so substreams can be handed to workers in any
// order and the results stay identical across thread counts and platforms.
// Mixing is the splitmix64 finalizer applied twice.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : key_(mix(seed ^ 0x9e3779b97f4a7c15ull)) {}

    // Child generator for substream `stream`; independent of draws made here.
    Rng substream(std::uint64_t stream) const {
        Rng child(0);
        child.key_ = mix(key_ + 0x632be59bd9b4e019ull * (stream + 1));
        child.counter_ = 0;
        return child;
    }

    std::uint64_t next_u64() { return mix(key_ + 0xbf58476d1ce4e5b9ull * (++counter_)); }

    // Uniform in [0,1) with 53 random bits.
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Uniform integer in [0, n); n > 0. Rejection keeps it unbiased.
    std::uint64_t next_below(std::uint64_t n) {
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t v = next_u64();
        while (v >= limit) v = next_u64();
        return v % n;
    }

    // Standard normal via Box-Muller; second value cached.
    double next_gaussian() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u1 = next_double();
        while (u1 <= 0.0) u1 = next_double();
        const double u2 = next_double();
        const double mag = std::sqrt(-2.0 * std::log(u1));
        constexpr double two_pi = 6.283185307179586476925286766559;
        spare_ = mag * std::sin(two_pi * u2);
        has_spare_ = true;
        return mag * std::cos(two_pi * u2);
    }

    // Fisher-Yates sample of `count` distinct indices from [0, n).
    std::vector<int> sample_indices(int n, int count) {
        std::vector<int> pool(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) pool[static_cast<std::size_t>(i)] = i;
        for (int i = 0; i < count; ++i) {
            const int j = i + static_cast<int>(next_below(static_cast<std::uint64_t>(n - i)));
            std::swap(pool[static_cast<std::size_t>(i)], pool[static_cast<std::size_t>(j)]);
        }
        pool.resize(static_cast<std::size_t>(count));
        return pool;
    }

    static std::uint64_t mix(std::uint64_t z) {
        z ^= z >> 30;
        z *= 0xbf58476d1ce4e5b9ull;
        z ^= z >> 27;
        z *= 0x94d049bb133111ebull;
        z ^= z >> 31;
        z ^= z >> 33;
        z *= 0xff51afd7ed558ccdull;
        z ^= z >> 33;
        z *= 0xc4ceb9fe1a85ec53ull;
        z ^= z >> 33;
        return z;
    }

private:
    std::uint64_t key_ = 0;
    std::uint64_t counter_ = 0;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

} // namespace bikm

#endif
