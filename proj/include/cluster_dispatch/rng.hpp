#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace cluster_dispatch {

// mt19937_64 with hand-rolled value mappings. The standard pins the engine's
// output sequence but not the library distributions, so uniform/normal
// draws are mapped here to keep one seed bit-identical on every platform.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    // uniform in [0, 1)
    double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    // uniform integer in [0, n), n > 0
    std::size_t uniform_index(std::size_t n) {
        return static_cast<std::size_t>(engine_() % n);
    }

    bool bernoulli(double p) { return uniform01() < p; }

    // standard normal, Box-Muller on the engine's own uniforms
    double normal() {
        double u1 = uniform01();
        while (u1 <= 0.0) u1 = uniform01();
        const double u2 = uniform01();
        constexpr double two_pi = 6.283185307179586476925286766559;
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(two_pi * u2);
    }

    double normal(double mean, double sigma) { return mean + sigma * normal(); }

private:
    std::mt19937_64 engine_;
};

// splitmix64 finalizer
inline std::uint64_t hash_u64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

// Derives an independent sub-stream seed from a run seed and stream labels.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream,
                                 std::uint64_t a = 0, std::uint64_t b = 0) {
    return hash_u64(hash_u64(hash_u64(seed) ^ stream) ^ (a * 0x9E3779B97F4A7C15ull + b));
}

} // namespace cluster_dispatch
