#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace anisolib {

// Counter-based sampling: every draw is a pure function of (seed, counters),
// so certification reports are reproducible across platforms and runs.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

inline std::uint64_t mix_keys(std::uint64_t seed, std::uint64_t a, std::uint64_t b, std::uint64_t c) {
    std::uint64_t h = splitmix64(seed ^ 0x41727469666163ull);
    h = splitmix64(h ^ a);
    h = splitmix64(h ^ b);
    h = splitmix64(h ^ c);
    return h;
}

// uniform in [0, 1)
inline double uniform01(std::uint64_t key) {
    return static_cast<double>(key >> 11) * 0x1.0p-53;
}

// Point t of the Monte Carlo cloud inside the box {|y_j - center_j| <= halfwidth_j}.
std::vector<double> box_sample(std::uint64_t seed, std::uint64_t box_id, std::uint64_t t,
                               std::span<const double> center, std::span<const double> halfwidth);

// Sign-pattern corners over the first min(d, max_corner_dims) dimensions;
// any remaining dimensions sit at the positive corner.
std::vector<std::vector<double>> box_corners(std::span<const double> center,
                                             std::span<const double> halfwidth,
                                             std::uint32_t max_corner_dims = 10);

// Least-squares slope of y against x.
double linear_fit_slope(std::span<const double> x, std::span<const double> y);

} // namespace anisolib
