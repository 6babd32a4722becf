#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "anisolib/model.hpp"
#include "anisolib/multi_index.hpp"
#include "anisolib/weights.hpp"

namespace anisolib {

// Finitely supported map nu -> value in R^k, iterated in canonical
// (degree, lex) order.
class WeightedCoeffSeq {
public:
    explicit WeightedCoeffSeq(std::uint32_t value_dim = 1);

    void set(const MultiIndex& nu, std::vector<double> value);
    const std::vector<double>* find(const MultiIndex& nu) const;
    const std::map<MultiIndex, std::vector<double>, MultiIndexLess>& items() const { return items_; }
    std::size_t support_size() const { return items_.size(); }
    std::uint32_t value_dim() const { return value_dim_; }

    // (sum ||v_nu||_2^p)^{1/p}; max for p = inf.
    double lp_norm(double p) const;

private:
    std::uint32_t value_dim_;
    std::map<MultiIndex, std::vector<double>, MultiIndexLess> items_;
};

// The recentering map on weighted coefficient sequences:
//   out_nu = (rho - |y|)^nu sum_{mu >= nu} v_mu binom(mu, nu) rho^{-mu} y^{mu - nu}.
// Fed rho^nu-weighted Taylor coefficients at 0, it returns the
// (rho - |y|)^nu-weighted coefficients at y. Output support is the downward
// closure of the input support; all sums are finite and exact.
WeightedCoeffSeq recenter_coeffs(const WeightSequence& rho, std::span<const double> y,
                                 const WeightedCoeffSeq& v,
                                 std::size_t node_budget = 10'000'000);

// Bound on the lp -> lp norm of the recentering map:
//   (prod_j (1 - |y_j|/rho_j)^{-1})^{1 - 1/p}.
double recenter_norm_bound(const WeightSequence& rho, std::span<const double> y, double p);

struct ShiftedCoeffs {
    // parallel to the requested index set, canonical member order preserved
    std::vector<std::pair<MultiIndex, std::vector<double>>> coeffs;
    double tail_bound = 0.0; // max over nu of the dropped-series majorant
    bool truncated = false;  // true when the degree-capped series route ran
};

// Shifted Taylor coefficients \partial_nu u(center)/nu! for nu in index_set.
// Separable kinds use the exact per-dimension closed form; finite
// polynomials use the exact finite sum (degree-capped, with the dropped
// mass reported). Throws when the reported tail exceeds tail_tolerance.
ShiftedCoeffs shifted_coeffs(const TaylorModel& model, std::span<const double> center,
                             const LowerSet& index_set, std::uint32_t degree_cap = 30,
                             double tail_tolerance = 1e-9);

// Degree-capped series route for any model, with a rigorous majorant of the
// dropped mass. Exercises the same contract as shifted_coeffs without the
// closed-form shortcut.
ShiftedCoeffs shifted_coeffs_via_series(const TaylorModel& model, std::span<const double> center,
                                        const LowerSet& index_set, std::uint32_t degree_cap = 30);

} // namespace anisolib
