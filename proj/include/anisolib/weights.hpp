#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "anisolib/multi_index.hpp"

namespace anisolib {

enum class WeightFamily { explicit_list, power, geometric };

enum class TailMode {
    family_default, // analytic for parametric families, truncated for lists
    truncated,      // finite sum over j = J+1..dims
    analytic        // closed-form / rigorously bounded infinite tail
};

// Anisotropy sequence rho (or a derived sequence), materialized over its
// first `dims` entries. Every entry must exceed 1.
class WeightSequence {
public:
    static WeightSequence from_list(std::vector<double> values);
    static WeightSequence power_family(double M, double s, std::uint32_t dims);      // rho_j = M j^s
    static WeightSequence geometric_family(double M, double g, std::uint32_t dims);  // rho_j = M g^j

    std::uint32_t dims() const { return static_cast<std::uint32_t>(values_.size()); }
    double at(std::uint32_t j) const; // 1-based
    std::span<const double> values() const { return values_; }
    double min_value() const { return min_value_; }
    bool nondecreasing() const { return nondecreasing_; }
    WeightFamily family() const { return family_; }
    double param_M() const { return M_; }
    double param_s() const { return s_; }
    double param_g() const { return g_; }

    std::vector<double> inverse_values() const;

    // Elementwise power; family metadata is dropped (explicit list result).
    WeightSequence powered(double exponent) const;

    TailMode default_tail_mode() const;
    // sum_{j > J} rho_j^{-q}. Truncated mode sums up to dims; analytic mode
    // uses the family's infinite tail (exact for geometric, explicit terms
    // plus an integral majorant for power) and throws when it diverges.
    double tail_q_sum(std::uint32_t J, double q, TailMode mode = TailMode::family_default) const;

private:
    WeightSequence(WeightFamily fam, std::vector<double> values, double M, double s, double g);

    WeightFamily family_ = WeightFamily::explicit_list;
    std::vector<double> values_;
    double M_ = 0, s_ = 0, g_ = 0;
    double min_value_ = 0;
    bool nondecreasing_ = false;
};

// Exponent bookkeeping for a (p, q) pair: conjugate p', theta = 1 - q/p',
// q_theta = q/theta and the rate r = -1 + 1/p + 1/q. Requires
// 1 <= p <= inf and 0 < q < p/(p-1); r > 0 follows.
class ExponentProfile {
public:
    static ExponentProfile create(double p, double q);

    double p() const { return p_; }
    double q() const { return q_; }
    double p_conjugate() const { return p_conj_; }
    double theta() const { return theta_; }
    double q_theta() const { return q_theta_; }
    double rate() const { return rate_; }

private:
    ExponentProfile() = default;
    double p_ = 0, q_ = 0, p_conj_ = 0, theta_ = 0, q_theta_ = 0, rate_ = 0;
};

// (sum v^q)^{1/q}; max for q = inf. Quasi-norm for q < 1 by the same formula.
double lq_norm(std::span<const double> values, double q);

// beta = -ln(1 - rho_min^{-q}) rho_min^q; always >= 1 for rho_min > 1.
double norm_equivalence_beta(double rho_min, double q);

// C(rho, q) = beta^{1/q} exp(beta/q * sum_j rho_j^{-q}); always >= 1.
double norm_equivalence_constant(const WeightSequence& rho, double q);

// The theta-powered sequence used by the second local estimate.
WeightSequence theta_weights(const WeightSequence& rho, const ExponentProfile& profile);

// Elementwise (w_j - |center_j|)/halfwidth_j; requires the box
// {|y_j - center_j| <= halfwidth_j} to lie inside [-1,1]^d. Result
// dominates the input elementwise.
WeightSequence recentered_weights(const WeightSequence& weights,
                                  std::span<const double> center,
                                  std::span<const double> halfwidths);

struct NormBracket {
    double lower = 0; // degree-truncated part
    double upper = 0; // truncated part plus the product-form remainder
};

// ||(rho^{-nu})||_{l_q} over all nonzero nu supported on dims 1..d:
// enumerated up to |nu| <= max_degree, with the exact geometric-product
// remainder prod_j (1 - rho_j^{-q})^{-1} - 1 closing the bracket.
NormBracket fstar_lq_norm(const WeightSequence& rho, double q, std::uint32_t max_degree = 12);

inline LowerSet top_terms(const WeightSequence& rho, std::size_t count,
                          std::size_t node_budget = 10'000'000) {
    return top_terms(rho.values(), count, node_budget);
}

} // namespace anisolib
