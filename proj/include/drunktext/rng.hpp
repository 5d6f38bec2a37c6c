#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

namespace drunktext {

// All randomness flows from one root seed through named substreams, so any
// stage can be reproduced in isolation. Distributions are hand-rolled on top
// of mt19937_64 because the std:: distribution algorithms are
// implementation-defined and would break cross-platform reproducibility.

inline std::uint64_t fnv1a64(std::string_view s) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t substream_seed(std::uint64_t root, std::string_view name) {
    return splitmix64(root ^ fnv1a64(name));
}

inline std::mt19937_64 substream(std::uint64_t root, std::string_view name) {
    return std::mt19937_64(substream_seed(root, name));
}

// Uniform in [0, 1) with 53-bit resolution.
inline double uniform_real(std::mt19937_64& g) {
    return static_cast<double>(g() >> 11) * 0x1.0p-53;
}

// Uniform integer in [0, n). Rejection sampling keeps it unbiased.
inline std::uint64_t uniform_below(std::mt19937_64& g, std::uint64_t n) {
    if (n <= 1) return 0;
    const std::uint64_t limit = ~0ULL - (~0ULL % n + 1) % n;
    std::uint64_t x;
    do {
        x = g();
    } while (x > limit);
    return x % n;
}

inline std::int64_t uniform_range(std::mt19937_64& g, std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(
                    uniform_below(g, static_cast<std::uint64_t>(hi - lo + 1)));
}

inline bool bernoulli(std::mt19937_64& g, double p) {
    return uniform_real(g) < p;
}

// Box-Muller; one value per call, the twin is discarded for simplicity.
inline double normal(std::mt19937_64& g, double mean, double stddev) {
    double u1 = uniform_real(g);
    double u2 = uniform_real(g);
    while (u1 <= 0.0) u1 = uniform_real(g);
    double z = std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
    return mean + stddev * z;
}

// Geometric number of trials (>= 1) with success probability p, by inversion.
inline std::int64_t geometric_trials(std::mt19937_64& g, double p) {
    if (p >= 1.0) return 1;
    double u = uniform_real(g);
    while (u <= 0.0) u = uniform_real(g);
    return 1 + static_cast<std::int64_t>(std::floor(std::log(u) / std::log1p(-p)));
}

template <typename T>
void shuffle_seeded(std::vector<T>& v, std::mt19937_64& g) {
    for (std::size_t i = v.size(); i > 1; --i) {
        std::size_t j = static_cast<std::size_t>(uniform_below(g, i));
        std::swap(v[i - 1], v[j]);
    }
}

}  // namespace drunktext
