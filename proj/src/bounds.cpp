#include "anisolib/bounds.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace anisolib {

namespace {

double m_power(std::uint32_t m, double rate) {
    return std::pow(static_cast<double>(m) + 1.0, -rate);
}

double assemble(BoundReport& report) {
    report.bound_value = report.class_norm_factor * report.c_constant * report.weight_norm *
                         report.product_factor * report.m_power;
    return report.bound_value;
}

void require_finite_norm(double model_norm) {
    if (!(model_norm >= 0.0) || !std::isfinite(model_norm))
        throw std::invalid_argument("model class norm must be finite and nonnegative");
}

} // namespace

BoundReport global_bound(double model_norm, const WeightSequence& rho,
                         const ExponentProfile& profile, std::uint32_t m) {
    require_finite_norm(model_norm);
    BoundReport report;
    report.which = BoundKind::global_rho;
    report.rate = profile.rate();
    report.class_norm_factor = model_norm;
    report.c_constant = norm_equivalence_constant(rho, profile.q());
    report.weight_norm = lq_norm(rho.inverse_values(), profile.q());
    report.m_power = m_power(m, profile.rate());
    assemble(report);
    return report;
}

BoundReport global_bound_sharper(double model_norm, const WeightSequence& rho,
                                 const ExponentProfile& profile, std::uint32_t m,
                                 std::uint32_t truncation_degree) {
    require_finite_norm(model_norm);
    BoundReport report;
    report.which = BoundKind::global_rho_sharper;
    report.rate = profile.rate();
    report.class_norm_factor = model_norm;
    report.c_constant = 1.0;
    report.weight_norm = fstar_lq_norm(rho, profile.q(), truncation_degree).upper;
    report.m_power = m_power(m, profile.rate());
    assemble(report);
    return report;
}

BoundReport local_bound_v1(double model_norm, const WeightSequence& rho,
                           const ExponentProfile& profile, const Cell& cell, std::uint32_t m) {
    require_finite_norm(model_norm);
    if (!(profile.q() <= 1.0))
        throw std::invalid_argument("local_bound_v1 requires 0 < q <= 1 (q=" +
                                    std::to_string(profile.q()) + ")");
    validate_cell(cell, rho.dims());
    BoundReport report;
    report.which = BoundKind::local_v1;
    report.rate = profile.rate();
    report.class_norm_factor = model_norm;
    report.c_constant = norm_equivalence_constant(rho, profile.q());
    const WeightSequence recentered = recentered_weights(rho, cell.center, cell.halfwidth);
    report.weight_norm = lq_norm(recentered.inverse_values(), profile.q());
    report.product_factor = recenter_product_factor(rho, cell, profile.p());
    report.m_power = m_power(m, profile.rate());
    assemble(report);
    return report;
}

double recenter_product_factor(const WeightSequence& rho, const Cell& cell, double p) {
    if (p == 1.0) return 1.0;
    double prod = 1.0;
    for (std::uint32_t j = 0; j < rho.dims(); ++j)
        prod /= 1.0 - std::abs(cell.center[j]) / rho.values()[j];
    if (std::isinf(p)) return prod;
    return std::pow(prod, 1.0 - 1.0 / p);
}

BoundReport local_bound_v2(double model_kappa1_norm, const WeightSequence& rho,
                           const ExponentProfile& profile, const Cell& cell, std::uint32_t m) {
    require_finite_norm(model_kappa1_norm);
    validate_cell(cell, rho.dims());
    BoundReport report;
    report.which = BoundKind::local_v2;
    report.rate = profile.rate();
    report.class_norm_factor = model_kappa1_norm;
    const WeightSequence kappa = theta_weights(rho, profile);
    report.c_constant = norm_equivalence_constant(kappa, profile.q_theta());
    const WeightSequence recentered = recentered_weights(kappa, cell.center, cell.halfwidth);
    report.weight_norm = lq_norm(recentered.inverse_values(), profile.q_theta());
    report.m_power = m_power(m, profile.rate());
    assemble(report);
    return report;
}

BoundReport global_kappa_bound(double model_kappa1_norm, const WeightSequence& rho,
                               const ExponentProfile& profile, std::uint32_t m) {
    BoundReport report = local_bound_v2(model_kappa1_norm, rho, profile, full_cube(rho.dims()), m);
    report.which = BoundKind::global_kappa;
    return report;
}

Cell full_cube(std::uint32_t dims) {
    Cell cell;
    cell.center.assign(dims, 0.0);
    cell.halfwidth.assign(dims, 1.0);
    return cell;
}

ComparisonRecord compare_bounds(const TaylorModel& model, const WeightSequence& rho,
                                const ExponentProfile& profile, std::uint32_t m) {
    if (!(profile.p() > 1.0))
        throw std::invalid_argument("compare_bounds requires p > 1 (the estimates coincide at p = 1)");
    ComparisonRecord rec;
    rec.rate = profile.rate();
    rec.theta = profile.theta();

    rec.rho_weight_norm = lq_norm(rho.inverse_values(), profile.q());
    const WeightSequence kappa = theta_weights(rho, profile);
    rec.kappa_weight_norm = lq_norm(kappa.inverse_values(), profile.q_theta());
    rec.kappa_norm_not_larger = rec.kappa_weight_norm <= rec.rho_weight_norm;

    rec.c_rho = norm_equivalence_constant(rho, profile.q());
    rec.c_kappa = norm_equivalence_constant(kappa, profile.q_theta());

    const ClassNorm norm_rho = class_norm(model, rho, profile.p());
    const ClassNorm norm_kappa = class_norm(model, kappa, 1.0);
    if (!norm_rho.finite() || !norm_kappa.finite())
        throw std::invalid_argument("compare_bounds: model class norm divergent for the given profile");
    rec.class_norm_rho_p = norm_rho.value();
    rec.class_norm_kappa_1 = norm_kappa.value();
    rec.embedding_k = embedding_constant(rho, profile);

    rec.global_rho_value = global_bound(rec.class_norm_rho_p, rho, profile, m).bound_value;
    rec.global_kappa_value = global_kappa_bound(rec.class_norm_kappa_1, rho, profile, m).bound_value;
    return rec;
}

} // namespace anisolib
