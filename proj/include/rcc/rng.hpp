#pragma once

#include <bit>
#include <cmath>
#include <cstdint>
#include <random>

namespace rcc {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

// Stream seed for worker `index` under `master`. Streams for distinct indices
// are independent for all practical purposes, and the derivation is stable
// across platforms and worker counts.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
    return splitmix64(splitmix64(master) ^ splitmix64(index + 0x51ED270B6C1D3B8FULL));
}

inline std::uint64_t hash_mix(std::uint64_t h, std::uint64_t v) {
    return splitmix64(h ^ (v + 0x9E3779B97F4A7C15ULL + (h << 6) + (h >> 2)));
}

inline std::uint64_t hash_mix(std::uint64_t h, double v) {
    return hash_mix(h, std::bit_cast<std::uint64_t>(v));
}

// Deterministic RNG with hand-rolled distributions. std::mt19937_64 seeded
// from a single value is fully specified by the standard; the distributions
// below avoid the implementation-defined std::*_distribution algorithms so
// that identical seeds give identical draws on every platform.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    // Uniform on [0, 1), 53-bit resolution.
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // Standard normal via Box-Muller; the second value of each pair is cached.
    double normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u1 = 1.0 - uniform();  // (0, 1], keeps log() finite
        double u2 = uniform();
        double r = std::sqrt(-2.0 * std::log(u1));
        double a = 2.0 * M_PI * u2;
        spare_ = r * std::sin(a);
        has_spare_ = true;
        return r * std::cos(a);
    }

    // Uniform index in [0, n). Modulo bias is below 2^-50 for any n that fits
    // in memory, far under the reproducibility tolerances used here.
    std::size_t index(std::size_t n) { return static_cast<std::size_t>(next_u64() % n); }

  private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace rcc
