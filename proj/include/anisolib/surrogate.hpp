#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "anisolib/bounds.hpp"
#include "anisolib/model.hpp"
#include "anisolib/multi_index.hpp"
#include "anisolib/partition.hpp"
#include "anisolib/recenter.hpp"

namespace anisolib {

// One cell's truncated Taylor expansion: m+1 shifted coefficients over a
// downward-closed index set that always contains the zero index, so the
// local approximant is the affine space coeffs[0] + span{coeffs[1..m]}.
struct LocalSurrogate {
    Cell cell;
    LowerSet index_set;
    std::vector<std::vector<double>> coeffs; // parallel to index_set.members()

    std::span<const double> affine_offset() const { return coeffs.front(); }
    std::vector<double> evaluate(std::span<const double> y) const;
};

struct Provenance {
    ModelSpec model;
    double p = 0, q = 0;
    double eps = 0;
    std::uint32_t m = 0;
    std::uint64_t seed = 1;
    std::uint32_t samples_per_cell = 10'000;
    std::uint32_t degree_cap = 30;
    TailMode tail_mode = TailMode::family_default;
};

struct BuildOptions {
    std::uint64_t seed = 1;
    std::uint32_t samples_per_cell = 10'000;
    std::uint32_t degree_cap = 30;
    TailMode tail_mode = TailMode::family_default;
    std::uint64_t cell_budget = 200'000;
};

class SurrogateLibrary {
public:
    SurrogateLibrary(PartitionGrid grid, std::vector<LocalSurrogate> locals, Provenance provenance,
                     FeasibilityResult gate, double model_kappa1_norm, double c_total);

    const PartitionGrid& grid() const { return grid_; }
    const std::vector<LocalSurrogate>& locals() const { return locals_; }
    const Provenance& provenance() const { return provenance_; }
    const FeasibilityResult& gate() const { return gate_; }
    double model_kappa1_norm() const { return model_kappa1_norm_; }
    double c_total() const { return c_total_; }
    std::uint32_t dims() const;

    std::vector<double> query(std::span<const double> y) const;

private:
    PartitionGrid grid_;
    std::vector<LocalSurrogate> locals_;
    Provenance provenance_;
    FeasibilityResult gate_;
    double model_kappa1_norm_ = 0;
    double c_total_ = 0;
};

// Feasibility gate, split-dimension count, ladder construction, then one
// local expansion per cell: kappa-tilde weights, top-(m+1) index selection,
// shifted coefficients at the cell center.
SurrogateLibrary build_library(const TaylorModel& model, const ExponentProfile& profile,
                               double eps, std::uint32_t m, const BuildOptions& options = {});

struct CellCertificate {
    std::uint64_t cell_index = 0;
    double measured_sup = 0;
    double bound_v2 = 0;
    double ratio = 0; // measured / bound
};

struct CertificationReport {
    Provenance provenance;
    std::uint32_t samples_per_cell = 0;
    std::uint64_t seed = 0;
    double epsilon = 0;
    double max_measured = 0;
    bool pass = false;
    double ratio_min = 0, ratio_max = 0, ratio_mean = 0;
    std::vector<CellCertificate> cells;
};

// Per cell: sup of ||u(y) - P_Q(y)||_2 over counter-seeded Monte Carlo
// points plus the sign-pattern corners, compared against the cell's second
// local estimate and the target accuracy. Failures are report contents.
CertificationReport certify(const SurrogateLibrary& lib, const TaylorModel& model,
                            std::uint32_t samples_per_cell, std::uint64_t seed);

} // namespace anisolib
