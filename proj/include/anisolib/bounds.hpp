#pragma once

#include <cstdint>

#include "anisolib/model.hpp"
#include "anisolib/partition.hpp"
#include "anisolib/weights.hpp"

namespace anisolib {

enum class BoundKind { global_rho, global_rho_sharper, local_v1, local_v2, global_kappa };

// Every bound is stored with its multiplicative breakdown so a regression can
// be pinned to a single constant.
struct BoundReport {
    BoundKind which = BoundKind::global_rho;
    double bound_value = 0;
    double rate = 0;
    double class_norm_factor = 1; // ||u|| in the class the estimate needs
    double c_constant = 1;        // norm-equivalence constant
    double weight_norm = 1;       // l_q norm of the (possibly recentered) inverse weights
    double product_factor = 1;    // prod_j (1 - |ybar_j|/rho_j)^{-(1-1/p)}, 1 when absent
    double m_power = 1;           // (m+1)^{-r}
};

// Whole-cube estimate: C(rho,q) ||u|| ||(rho_j^{-1})||_{l_q} (m+1)^{-r}.
BoundReport global_bound(double model_norm, const WeightSequence& rho,
                         const ExponentProfile& profile, std::uint32_t m);

// Sharper intermediate variant with the full multi-index weight norm
// ||(rho^{-nu})||_{l_q} in place of C(rho,q) ||(rho_j^{-1})||_{l_q}
// (conservative bracket end of the truncated enumeration).
BoundReport global_bound_sharper(double model_norm, const WeightSequence& rho,
                                 const ExponentProfile& profile, std::uint32_t m,
                                 std::uint32_t truncation_degree = 12);

// prod_j (1 - |center_j|/rho_j)^{-(1-1/p)}; 1 at p = 1.
double recenter_product_factor(const WeightSequence& rho, const Cell& cell, double p);

// First local estimate (needs q <= 1): the recentered weights are
// rho~_j = (rho_j - |ybar_j|)/lambda_j and the cube factor enters at
// power 1 - 1/p.
BoundReport local_bound_v1(double model_norm, const WeightSequence& rho,
                           const ExponentProfile& profile, const Cell& cell, std::uint32_t m);

// Second local estimate via kappa_j = rho_j^theta; takes the kappa-class
// norm ||u||_{B_kappa,1} and uses the l_{q_theta} norm of the recentered
// inverse kappa weights. No cube factor.
BoundReport local_bound_v2(double model_kappa1_norm, const WeightSequence& rho,
                           const ExponentProfile& profile, const Cell& cell, std::uint32_t m);

// Whole-cube specialization of the second estimate.
BoundReport global_kappa_bound(double model_kappa1_norm, const WeightSequence& rho,
                               const ExponentProfile& profile, std::uint32_t m);

Cell full_cube(std::uint32_t dims);

// Term-by-term comparison of the rho-based and kappa-based whole-cube
// estimates (meaningful only for p > 1; the estimates coincide at p = 1).
struct ComparisonRecord {
    double rate = 0;                 // shared by both estimates
    double rho_weight_norm = 0;      // ||(rho_j^{-1})||_{l_q}
    double kappa_weight_norm = 0;    // ||(kappa_j^{-1})||_{l_{q_theta}} = rho norm^theta
    bool kappa_norm_not_larger = false; // holds iff the rho norm is >= 1
    double c_rho = 0;
    double c_kappa = 0;              // = c_rho^theta <= c_rho
    double theta = 0;
    double class_norm_rho_p = 0;     // ||u||_{B_rho,p}
    double class_norm_kappa_1 = 0;   // ||u||_{B_kappa,1} <= K ||u||_{B_rho,p}
    double embedding_k = 0;
    double global_rho_value = 0;
    double global_kappa_value = 0;
};

ComparisonRecord compare_bounds(const TaylorModel& model, const WeightSequence& rho,
                                const ExponentProfile& profile, std::uint32_t m);

} // namespace anisolib
