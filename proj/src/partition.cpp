#include "anisolib/partition.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace anisolib {

void validate_cell(const Cell& cell, std::uint32_t dims) {
    if (cell.center.size() != dims || cell.halfwidth.size() != dims)
        throw std::invalid_argument("cell dimension mismatch");
    for (std::uint32_t j = 0; j < dims; ++j) {
        if (!(cell.halfwidth[j] > 0.0)) throw std::invalid_argument("cell halfwidth must be positive");
        if (std::abs(cell.center[j]) + cell.halfwidth[j] > 1.0 + 1e-12)
            throw std::invalid_argument("cell not contained in [-1,1]^d at dim " + std::to_string(j + 1));
    }
}

Interval DirectionLadder::interval(std::uint32_t idx) const {
    if (idx >= interval_count()) throw std::invalid_argument("ladder interval index out of range");
    const double l = breakpoints[idx], r = breakpoints[idx + 1];
    return Interval{0.5 * (l + r), 0.5 * (r - l)};
}

std::uint32_t DirectionLadder::locate(double y) const {
    if (!(y >= -1.0 - 1e-12 && y <= 1.0 + 1e-12))
        throw std::invalid_argument("ladder locate: coordinate outside [-1,1]");
    // first interior breakpoint >= y; shared faces land in the lower interval
    const auto it = std::lower_bound(breakpoints.begin() + 1, breakpoints.end() - 1, y);
    const auto idx = static_cast<std::uint32_t>(it - (breakpoints.begin() + 1));
    return std::min(idx, interval_count() - 1);
}

DirectionLadder build_ladder(std::uint32_t dim, double kappa_j, double sigma) {
    if (!(kappa_j > 1.0)) throw std::invalid_argument("build_ladder requires kappa_j > 1");
    if (!(sigma > 0.0)) throw std::invalid_argument("build_ladder requires sigma > 0");

    DirectionLadder ladder;
    ladder.dim = dim;
    if (sigma * kappa_j >= 1.0) {
        ladder.k = 0;
        ladder.breakpoints = {-1.0, 1.0};
        return ladder;
    }

    // positive-side right endpoints; the central interval is [-lam0, lam0]
    std::vector<double> right_ends{sigma * kappa_j};
    const double step = sigma / (1.0 + sigma);
    while (true) {
        const double r_prev = right_ends.back();
        const double lam = step * (kappa_j - r_prev);
        if (!(lam > 0.0)) throw std::logic_error("ladder recursion stalled");
        const double r_next = r_prev + 2.0 * lam;
        if (r_next >= 1.0) {
            right_ends.push_back(1.0); // clamp the final interval to [r_prev, 1]
            break;
        }
        right_ends.push_back(r_next);
    }

    ladder.k = static_cast<std::uint32_t>(right_ends.size()) - 1;
    ladder.breakpoints.reserve(2 * right_ends.size());
    for (auto it = right_ends.rbegin(); it != right_ends.rend(); ++it) ladder.breakpoints.push_back(-*it);
    for (double b : right_ends) ladder.breakpoints.push_back(b);
    return ladder;
}

PartitionGrid single_cell_grid() {
    PartitionGrid grid;
    grid.single_cell = true;
    return grid;
}

std::vector<std::uint32_t> PartitionGrid::interval_counts() const {
    std::vector<std::uint32_t> n;
    n.reserve(ladders.size());
    for (const auto& lad : ladders) n.push_back(lad.interval_count());
    return n;
}

std::uint64_t PartitionGrid::cell_count_u64(std::uint64_t budget) const {
    std::uint64_t n = 1;
    for (const auto& lad : ladders) {
        const std::uint64_t f = lad.interval_count();
        if (n > budget / f) throw std::invalid_argument("partition cell count exceeds budget");
        n *= f;
    }
    return n;
}

Cell PartitionGrid::cell_at(std::uint64_t index, std::uint32_t dims) const {
    if (dims < J) throw std::invalid_argument("cell_at: dims must cover all subdivided directions");
    Cell cell;
    cell.center.assign(dims, 0.0);
    cell.halfwidth.assign(dims, 1.0);
    // dim 1 is the most significant digit
    std::uint64_t rem = index;
    for (std::uint32_t j = J; j >= 1; --j) {
        const auto& lad = ladders[j - 1];
        const std::uint64_t n = lad.interval_count();
        const auto idx = static_cast<std::uint32_t>(rem % n);
        rem /= n;
        const Interval iv = lad.interval(idx);
        cell.center[j - 1] = iv.center;
        cell.halfwidth[j - 1] = iv.halfwidth;
    }
    if (rem != 0) throw std::invalid_argument("cell index out of range");
    return cell;
}

std::uint64_t PartitionGrid::locate_cell(std::span<const double> y) const {
    if (single_cell || ladders.empty()) return 0;
    if (y.size() < J) throw std::invalid_argument("locate_cell: point has too few dimensions");
    std::uint64_t index = 0;
    for (std::uint32_t j = 1; j <= J; ++j) {
        const auto& lad = ladders[j - 1];
        index = index * lad.interval_count() + lad.locate(y[j - 1]);
    }
    return index;
}

FeasibilityResult feasibility_gate(double c_total, const ExponentProfile& profile,
                                   const WeightSequence& kappa, double eps, std::uint32_t m) {
    if (!(eps > 0.0)) throw std::invalid_argument("eps > 0 violated");
    if (!(c_total > 0.0) || !std::isfinite(c_total))
        throw std::invalid_argument("feasibility_gate: C must be positive and finite");
    FeasibilityResult res;
    const double weight_norm = lq_norm(kappa.inverse_values(), profile.q_theta());
    res.global_kappa_bound =
        c_total * weight_norm * std::pow(static_cast<double>(m) + 1.0, -profile.rate());
    res.single_cell = res.global_kappa_bound <= eps;
    res.eta = std::pow(eps * std::pow(static_cast<double>(m) + 1.0, profile.rate()) / c_total,
                       profile.q_theta());
    return res;
}

SplitDims compute_split_dims(const WeightSequence& rho, const ExponentProfile& profile,
                             double eta, TailMode mode) {
    if (!(eta > 0.0)) throw std::invalid_argument("eta > 0 violated");
    if (!rho.nondecreasing())
        throw std::invalid_argument("nondecreasing rho required for the tensor-product partition");
    SplitDims out;
    out.mode_used = mode == TailMode::family_default ? rho.default_tail_mode() : mode;
    for (std::uint32_t J = 1; J <= rho.dims(); ++J) {
        const double tail = rho.tail_q_sum(J, profile.q(), out.mode_used);
        if (tail <= 0.5 * eta) {
            out.J = J;
            out.tail_value = tail;
            return out;
        }
    }
    throw std::invalid_argument("infeasible: even J = dims leaves the weight tail above eta/2");
}

PartitionGrid build_partition(const WeightSequence& rho, const ExponentProfile& profile,
                              double eta, std::uint32_t J, TailMode mode) {
    if (!(eta > 0.0)) throw std::invalid_argument("eta > 0 violated");
    if (J == 0 || J > rho.dims()) throw std::invalid_argument("J must lie in 1..dims");
    if (!rho.nondecreasing())
        throw std::invalid_argument("nondecreasing rho required for the tensor-product partition");

    PartitionGrid grid;
    grid.J = J;
    grid.eta = eta;
    grid.tail_mode = mode == TailMode::family_default ? rho.default_tail_mode() : mode;
    grid.tail_value = rho.tail_q_sum(J, profile.q(), grid.tail_mode);
    grid.sigma = std::pow(eta / (2.0 * J), 1.0 / profile.q_theta());

    grid.ladders.reserve(J);
    for (std::uint32_t j = 1; j <= J; ++j) {
        const double kappa_j = std::pow(rho.at(j), profile.theta());
        DirectionLadder lad = build_ladder(j, kappa_j, grid.sigma);
        const double n_j = static_cast<double>(lad.interval_count());
        grid.cell_count *= n_j;
        grid.log_cell_count += std::log(n_j);
        if (lad.k > 0) {
            const double factor = std::abs(std::log1p(-1.0 / kappa_j)) / grid.sigma + 2.0;
            grid.bound_on_n *= factor;
            grid.log_bound_on_n += std::log(factor);
        }
        grid.ladders.push_back(std::move(lad));
    }
    return grid;
}

} // namespace anisolib
