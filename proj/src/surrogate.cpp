#include "anisolib/surrogate.hpp"

#include <cmath>
#include <stdexcept>

#include "anisolib/sampling.hpp"

namespace anisolib {

namespace {

double pow_u32(double base, std::uint32_t e) {
    double r = 1.0;
    for (std::uint32_t i = 0; i < e; ++i) r *= base;
    return r;
}

double error_norm(std::span<const double> exact, std::span<const double> approx) {
    double s = 0.0;
    for (std::size_t i = 0; i < exact.size(); ++i) {
        const double diff = exact[i] - approx[i];
        s += diff * diff;
    }
    return std::sqrt(s);
}

} // namespace

std::vector<double> LocalSurrogate::evaluate(std::span<const double> y) const {
    std::vector<double> acc(coeffs.front().size(), 0.0);
    const auto& members = index_set.members();
    for (std::size_t i = 0; i < members.size(); ++i) {
        double mono = 1.0;
        for (const auto& [d, e] : members[i].entries()) mono *= pow_u32(y[d - 1] - cell.center[d - 1], e);
        for (std::size_t c = 0; c < acc.size(); ++c) acc[c] += coeffs[i][c] * mono;
    }
    return acc;
}

SurrogateLibrary::SurrogateLibrary(PartitionGrid grid, std::vector<LocalSurrogate> locals,
                                   Provenance provenance, FeasibilityResult gate,
                                   double model_kappa1_norm, double c_total)
    : grid_(std::move(grid)),
      locals_(std::move(locals)),
      provenance_(std::move(provenance)),
      gate_(gate),
      model_kappa1_norm_(model_kappa1_norm),
      c_total_(c_total) {
    if (locals_.empty()) throw std::invalid_argument("a surrogate library needs at least one cell");
}

std::uint32_t SurrogateLibrary::dims() const { return locals_.front().cell.dims(); }

std::vector<double> SurrogateLibrary::query(std::span<const double> y) const {
    if (y.size() != dims()) throw std::invalid_argument("query: point dimension mismatch");
    for (double yj : y)
        if (std::abs(yj) > 1.0 + 1e-9) throw std::invalid_argument("query: point outside [-1,1]^d");
    const std::uint64_t index = grid_.locate_cell(y);
    return locals_[index].evaluate(y);
}

SurrogateLibrary build_library(const TaylorModel& model, const ExponentProfile& profile,
                               double eps, std::uint32_t m, const BuildOptions& options) {
    const ClassNorm declared = class_norm(model, model.rho(), profile.p());
    if (!declared.finite())
        throw std::invalid_argument("model not a member of the declared (rho, p) class: norm divergent");

    const WeightSequence kappa = theta_weights(model.rho(), profile);
    const ClassNorm kappa1 = class_norm(model, kappa, 1.0);
    if (!kappa1.finite())
        throw std::invalid_argument("kappa-class norm divergent; the local estimate is unusable");
    const double c_total = norm_equivalence_constant(kappa, profile.q_theta()) * kappa1.value();

    const FeasibilityResult gate = feasibility_gate(c_total, profile, kappa, eps, m);

    PartitionGrid grid;
    if (gate.single_cell) {
        grid = single_cell_grid();
    } else {
        const SplitDims split = compute_split_dims(model.rho(), profile, gate.eta, options.tail_mode);
        grid = build_partition(model.rho(), profile, gate.eta, split.J, options.tail_mode);
    }

    const std::uint64_t cell_count = gate.single_cell ? 1 : grid.cell_count_u64(options.cell_budget);
    std::vector<LocalSurrogate> locals;
    locals.reserve(cell_count);
    for (std::uint64_t ci = 0; ci < cell_count; ++ci) {
        LocalSurrogate local;
        local.cell = gate.single_cell ? full_cube(model.dims()) : grid.cell_at(ci, model.dims());
        const WeightSequence kappa_tilde =
            recentered_weights(kappa, local.cell.center, local.cell.halfwidth);
        local.index_set = top_terms(kappa_tilde, m + 1);
        ShiftedCoeffs shifted =
            shifted_coeffs(model, local.cell.center, local.index_set, options.degree_cap);
        local.coeffs.reserve(shifted.coeffs.size());
        for (auto& [nu, value] : shifted.coeffs) local.coeffs.push_back(std::move(value));
        locals.push_back(std::move(local));
    }

    Provenance prov;
    prov.model = model.spec();
    prov.p = profile.p();
    prov.q = profile.q();
    prov.eps = eps;
    prov.m = m;
    prov.seed = options.seed;
    prov.samples_per_cell = options.samples_per_cell;
    prov.degree_cap = options.degree_cap;
    prov.tail_mode = options.tail_mode;

    return SurrogateLibrary(std::move(grid), std::move(locals), std::move(prov), gate,
                            kappa1.value(), c_total);
}

CertificationReport certify(const SurrogateLibrary& lib, const TaylorModel& model,
                            std::uint32_t samples_per_cell, std::uint64_t seed) {
    const ExponentProfile profile = ExponentProfile::create(lib.provenance().p, lib.provenance().q);
    CertificationReport report;
    report.provenance = lib.provenance();
    report.samples_per_cell = samples_per_cell;
    report.seed = seed;
    report.epsilon = lib.provenance().eps;

    double ratio_sum = 0.0;
    bool first = true;
    for (std::uint64_t ci = 0; ci < lib.locals().size(); ++ci) {
        const LocalSurrogate& local = lib.locals()[ci];
        double sup = 0.0;
        for (std::uint32_t t = 0; t < samples_per_cell; ++t) {
            const std::vector<double> y =
                box_sample(seed, ci, t, local.cell.center, local.cell.halfwidth);
            sup = std::max(sup, error_norm(model.evaluate(y), local.evaluate(y)));
        }
        for (const auto& y : box_corners(local.cell.center, local.cell.halfwidth))
            sup = std::max(sup, error_norm(model.evaluate(y), local.evaluate(y)));

        CellCertificate cert;
        cert.cell_index = ci;
        cert.measured_sup = sup;
        cert.bound_v2 = local_bound_v2(lib.model_kappa1_norm(), model.rho(), profile, local.cell,
                                       lib.provenance().m)
                            .bound_value;
        cert.ratio = cert.measured_sup / cert.bound_v2;
        report.max_measured = std::max(report.max_measured, cert.measured_sup);
        report.ratio_min = first ? cert.ratio : std::min(report.ratio_min, cert.ratio);
        report.ratio_max = first ? cert.ratio : std::max(report.ratio_max, cert.ratio);
        ratio_sum += cert.ratio;
        first = false;
        report.cells.push_back(cert);
    }
    report.ratio_mean = ratio_sum / static_cast<double>(report.cells.size());
    report.pass = report.max_measured <= report.epsilon;
    return report;
}

} // namespace anisolib
