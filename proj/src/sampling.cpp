#include "anisolib/sampling.hpp"

#include <algorithm>
#include <stdexcept>

namespace anisolib {

std::vector<double> box_sample(std::uint64_t seed, std::uint64_t box_id, std::uint64_t t,
                               std::span<const double> center, std::span<const double> halfwidth) {
    if (center.size() != halfwidth.size()) throw std::invalid_argument("box_sample: size mismatch");
    std::vector<double> y(center.size());
    for (std::size_t j = 0; j < y.size(); ++j) {
        const double u = uniform01(mix_keys(seed, box_id, t, j + 1));
        y[j] = center[j] + (2.0 * u - 1.0) * halfwidth[j];
    }
    return y;
}

std::vector<std::vector<double>> box_corners(std::span<const double> center,
                                             std::span<const double> halfwidth,
                                             std::uint32_t max_corner_dims) {
    if (center.size() != halfwidth.size()) throw std::invalid_argument("box_corners: size mismatch");
    const std::uint32_t d = static_cast<std::uint32_t>(center.size());
    const std::uint32_t nd = std::min(d, max_corner_dims);
    std::vector<std::vector<double>> corners;
    corners.reserve(std::size_t{1} << nd);
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << nd); ++mask) {
        std::vector<double> y(d);
        for (std::uint32_t j = 0; j < d; ++j) {
            const double sign = (j < nd && (mask >> j & 1u)) ? -1.0 : 1.0;
            y[j] = center[j] + sign * halfwidth[j];
        }
        corners.push_back(std::move(y));
    }
    return corners;
}

double linear_fit_slope(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2)
        throw std::invalid_argument("linear_fit_slope needs >= 2 matched points");
    const double n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    const double denom = n * sxx - sx * sx;
    if (denom == 0.0) throw std::invalid_argument("linear_fit_slope: degenerate abscissae");
    return (n * sxy - sx * sy) / denom;
}

} // namespace anisolib
