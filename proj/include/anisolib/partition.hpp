#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "anisolib/weights.hpp"

namespace anisolib {

// Hyperrectangle inside [-1,1]^d given by per-dimension center and halfwidth.
struct Cell {
    std::vector<double> center;
    std::vector<double> halfwidth;
    std::uint32_t dims() const { return static_cast<std::uint32_t>(center.size()); }
};

void validate_cell(const Cell& cell, std::uint32_t dims);

struct Interval {
    double center = 0;
    double halfwidth = 0;
    double left() const { return center - halfwidth; }
    double right() const { return center + halfwidth; }
};

// Symmetric, contiguous subdivision of [-1,1] in one coordinate direction.
// Breakpoints are shared verbatim between neighbours, so the tiling is exact.
struct DirectionLadder {
    std::uint32_t dim = 0;
    std::uint32_t k = 0;             // 2k+1 intervals, indices 0..2k (i = idx - k)
    std::vector<double> breakpoints; // size 2k+2, from -1 to 1

    std::uint32_t interval_count() const { return 2 * k + 1; }
    Interval interval(std::uint32_t idx) const;
    // Boundary points resolve to the lower-index interval.
    std::uint32_t locate(double y) const;
};

// One direction of the constructive subdivision: central interval of
// halfwidth sigma * kappa_j (escaping to a single [-1,1] when that reaches 1),
// then the fixed-point recursion lambda^i = sigma (kappa_j - ybar^i) marching
// right, clamping the last interval's right endpoint to 1, mirrored to the
// negative side.
DirectionLadder build_ladder(std::uint32_t dim, double kappa_j, double sigma);

// Grid statistics are kept in log space as well: cell_count overflows a
// double long before the ladder walk becomes expensive.
struct PartitionGrid {
    bool single_cell = false;
    std::uint32_t J = 0;
    double sigma = 0;
    double eta = 0;
    TailMode tail_mode = TailMode::truncated;
    double tail_value = 0; // sum_{j>J} rho_j^{-q} actually achieved
    std::vector<DirectionLadder> ladders; // j = 1..J

    double cell_count = 1;       // prod (2k_j + 1), +inf on overflow
    double log_cell_count = 0;   // sum log(2k_j + 1)
    double bound_on_n = 1;       // prod over subdivided dims of (|ln(1-kappa_j^{-1})|/sigma + 2)
    double log_bound_on_n = 0;

    std::vector<std::uint32_t> interval_counts() const;
    // Throws when the grid holds more cells than `budget`.
    std::uint64_t cell_count_u64(std::uint64_t budget = UINT64_MAX) const;
    Cell cell_at(std::uint64_t index, std::uint32_t dims) const;
    std::uint64_t locate_cell(std::span<const double> y) const;
};

PartitionGrid single_cell_grid();

struct FeasibilityResult {
    bool single_cell = false;
    double global_kappa_bound = 0;
    double eta = 0;
};

// Gate before partitioning: when the whole-cube kappa estimate
// C_total * ||(kappa_j^{-1})||_{l_{q_theta}} (m+1)^{-r} already meets eps,
// a single cell suffices; otherwise the per-cell budget is
// eta = (eps (m+1)^r / C_total)^{q_theta}.
FeasibilityResult feasibility_gate(double c_total, const ExponentProfile& profile,
                                   const WeightSequence& kappa, double eps, std::uint32_t m);

struct SplitDims {
    std::uint32_t J = 0;
    double tail_value = 0;
    TailMode mode_used = TailMode::truncated;
};

// Smallest J >= 1 with sum_{j>J} rho_j^{-q} <= eta/2. Requires a
// nondecreasing sequence; reports infeasibility when even J = dims leaves
// the tail above eta/2.
SplitDims compute_split_dims(const WeightSequence& rho, const ExponentProfile& profile,
                             double eta, TailMode mode = TailMode::family_default);

// sigma = (eta / 2J)^{1/q_theta}; ladders built for the first J directions
// against kappa_j = rho_j^theta. The cell-count bound evaluates the product
// form at its conservative constant 2.
PartitionGrid build_partition(const WeightSequence& rho, const ExponentProfile& profile,
                              double eta, std::uint32_t J,
                              TailMode mode = TailMode::family_default);

} // namespace anisolib
