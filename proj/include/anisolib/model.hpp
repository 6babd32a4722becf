#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "anisolib/multi_index.hpp"
#include "anisolib/weights.hpp"

namespace anisolib {

enum class ModelKind { separable_rational, scaled_separable, finite_polynomial };

// Serializable description of a model; round-trips through provenance blocks.
struct ModelSpec {
    ModelKind kind = ModelKind::separable_rational;
    WeightFamily family = WeightFamily::explicit_list;
    std::vector<double> rho_list; // explicit_list
    double M = 0, s = 0, g = 0;   // family parameters
    std::uint32_t dims = 0;
    double scaling = 1.0;                // c in (0,1]
    std::vector<double> direction{1.0};  // value direction in R^k
    // finite_polynomial support: dense exponents + value in R^k
    std::vector<std::pair<std::vector<std::uint32_t>, std::vector<double>>> poly_coeffs;
};

// A member of the model class with Taylor coefficients known in closed form:
//   separable_rational:  t_nu = rho^{-nu} w,          u(y) = w prod_j (1 - y_j/rho_j)^{-1}
//   scaled_separable:    t_nu = c^{|nu|} rho^{-nu} w, u(y) = w prod_j (1 - c y_j/rho_j)^{-1}
//   finite_polynomial:   explicit finite support,     u(y) = sum t_nu y^nu
// Values live in R^k with the Euclidean norm (k = direction size, default 1).
class TaylorModel {
public:
    static TaylorModel separable_rational(WeightSequence rho, std::vector<double> direction = {1.0});
    static TaylorModel scaled_separable(WeightSequence rho, double scaling,
                                        std::vector<double> direction = {1.0});
    static TaylorModel finite_polynomial(
        WeightSequence rho,
        std::vector<std::pair<MultiIndex, std::vector<double>>> coeffs);

    ModelKind kind() const { return kind_; }
    const WeightSequence& rho() const { return rho_; }
    std::uint32_t dims() const { return rho_.dims(); }
    std::uint32_t value_dim() const { return static_cast<std::uint32_t>(direction_.size()); }
    double scaling() const { return scaling_; }
    std::span<const double> direction() const { return direction_; }
    double direction_norm() const { return direction_norm_; }
    const std::vector<std::pair<MultiIndex, std::vector<double>>>& support() const { return support_; }

    std::vector<double> coeff(const MultiIndex& nu) const; // t_nu in R^k
    double coeff_norm(const MultiIndex& nu) const;         // ||t_nu||_2

    // Exact evaluation at y in [-1,1]^d.
    std::vector<double> evaluate(std::span<const double> y) const;

    ModelSpec spec() const;

private:
    TaylorModel() = default;
    ModelKind kind_ = ModelKind::separable_rational;
    WeightSequence rho_ = WeightSequence::from_list({2.0});
    double scaling_ = 1.0;
    std::vector<double> direction_{1.0};
    double direction_norm_ = 1.0;
    std::vector<std::pair<MultiIndex, std::vector<double>>> support_; // finite_polynomial only
};

TaylorModel make_model(const ModelSpec& spec);
WeightSequence make_weights(const ModelSpec& spec);

// Class norm of a model measured against an arbitrary weight sequence.
// Exact for every shipped kind; divergence is reported, not thrown.
struct ClassNorm {
    enum class Status { exact, bracket, divergent };
    Status status = Status::exact;
    double lower = 0;
    double upper = 0;
    bool finite() const { return status != Status::divergent; }
    double value() const; // conservative (upper) value; inf when divergent
};

ClassNorm class_norm(const TaylorModel& model, const WeightSequence& weights, double p);

// K = (sum_nu rho^{(theta-1) p' nu})^{1/p'} = (prod_j (1 - rho_j^{-q})^{-1})^{1/p'};
// bounds the kappa-class norm by the rho-class norm. Equals 1 at p = 1.
double embedding_constant(const WeightSequence& rho, const ExponentProfile& profile);

} // namespace anisolib
