#include "anisolib/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace anisolib {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double euclidean_norm(std::span<const double> v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

void validate_direction(const std::vector<double>& w) {
    if (w.empty()) throw std::invalid_argument("model direction must have at least one component");
    if (euclidean_norm(w) == 0.0) throw std::invalid_argument("model direction must be nonzero");
}

} // namespace

double ClassNorm::value() const {
    if (status == Status::divergent) return kInf;
    return upper;
}

TaylorModel TaylorModel::separable_rational(WeightSequence rho, std::vector<double> direction) {
    return scaled_separable(std::move(rho), 1.0, std::move(direction));
}

TaylorModel TaylorModel::scaled_separable(WeightSequence rho, double scaling,
                                          std::vector<double> direction) {
    if (!(scaling > 0.0 && scaling <= 1.0))
        throw std::invalid_argument("scaling c must lie in (0, 1]");
    validate_direction(direction);
    TaylorModel m;
    m.kind_ = scaling == 1.0 ? ModelKind::separable_rational : ModelKind::scaled_separable;
    m.rho_ = std::move(rho);
    m.scaling_ = scaling;
    m.direction_ = std::move(direction);
    m.direction_norm_ = euclidean_norm(m.direction_);
    return m;
}

TaylorModel TaylorModel::finite_polynomial(
    WeightSequence rho, std::vector<std::pair<MultiIndex, std::vector<double>>> coeffs) {
    if (coeffs.empty()) throw std::invalid_argument("finite polynomial needs at least one coefficient");
    const std::size_t k = coeffs.front().second.size();
    for (const auto& [nu, v] : coeffs) {
        if (v.size() != k) throw std::invalid_argument("inconsistent coefficient value dimensions");
        if (nu.max_dim() > rho.dims())
            throw std::invalid_argument("coefficient support exceeds declared dimension count");
    }
    std::sort(coeffs.begin(), coeffs.end(),
              [](const auto& a, const auto& b) { return MultiIndexLess{}(a.first, b.first); });
    for (std::size_t i = 1; i < coeffs.size(); ++i)
        if (coeffs[i].first == coeffs[i - 1].first)
            throw std::invalid_argument("duplicate coefficient index");
    TaylorModel m;
    m.kind_ = ModelKind::finite_polynomial;
    m.rho_ = std::move(rho);
    m.direction_ = std::vector<double>(k, 0.0); // value_dim carrier only
    m.direction_[0] = 1.0;
    m.direction_norm_ = 1.0;
    m.support_ = std::move(coeffs);
    return m;
}

std::vector<double> TaylorModel::coeff(const MultiIndex& nu) const {
    if (nu.max_dim() > dims()) return std::vector<double>(value_dim(), 0.0);
    if (kind_ == ModelKind::finite_polynomial) {
        for (const auto& [mu, v] : support_)
            if (mu == nu) return v;
        return std::vector<double>(value_dim(), 0.0);
    }
    double scalar = index_weight(rho_.values(), nu);
    for (std::uint32_t i = 0; i < nu.total_degree(); ++i) scalar *= scaling_;
    std::vector<double> out(direction_);
    for (double& x : out) x *= scalar;
    return out;
}

double TaylorModel::coeff_norm(const MultiIndex& nu) const {
    if (kind_ == ModelKind::finite_polynomial) return euclidean_norm(coeff(nu));
    if (nu.max_dim() > dims()) return 0.0;
    double scalar = index_weight(rho_.values(), nu);
    for (std::uint32_t i = 0; i < nu.total_degree(); ++i) scalar *= scaling_;
    return scalar * direction_norm_;
}

std::vector<double> TaylorModel::evaluate(std::span<const double> y) const {
    if (y.size() != dims()) throw std::invalid_argument("evaluate: point dimension mismatch");
    for (double yj : y)
        if (std::abs(yj) > 1.0 + 1e-9) throw std::invalid_argument("evaluate: point outside [-1,1]^d");
    if (kind_ == ModelKind::finite_polynomial) {
        std::vector<double> acc(value_dim(), 0.0);
        for (const auto& [nu, v] : support_) {
            const double mono = monomial(nu, y);
            for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += v[i] * mono;
        }
        return acc;
    }
    double scalar = 1.0;
    for (std::uint32_t j = 0; j < dims(); ++j) {
        const double yj = std::clamp(y[j], -1.0, 1.0);
        scalar /= 1.0 - scaling_ * yj / rho_.values()[j];
    }
    std::vector<double> out(direction_);
    for (double& x : out) x *= scalar;
    return out;
}

ModelSpec TaylorModel::spec() const {
    ModelSpec s;
    s.kind = kind_;
    s.family = rho_.family();
    s.dims = dims();
    switch (rho_.family()) {
        case WeightFamily::explicit_list:
            s.rho_list.assign(rho_.values().begin(), rho_.values().end());
            break;
        case WeightFamily::power:
            s.M = rho_.param_M();
            s.s = rho_.param_s();
            break;
        case WeightFamily::geometric:
            s.M = rho_.param_M();
            s.g = rho_.param_g();
            break;
    }
    s.scaling = scaling_;
    s.direction = direction_;
    if (kind_ == ModelKind::finite_polynomial) {
        for (const auto& [nu, v] : support_)
            s.poly_coeffs.emplace_back(nu.dense(dims()), v);
    }
    return s;
}

WeightSequence make_weights(const ModelSpec& spec) {
    switch (spec.family) {
        case WeightFamily::explicit_list:
            return WeightSequence::from_list(spec.rho_list);
        case WeightFamily::power:
            return WeightSequence::power_family(spec.M, spec.s, spec.dims);
        case WeightFamily::geometric:
            return WeightSequence::geometric_family(spec.M, spec.g, spec.dims);
    }
    throw std::invalid_argument("unknown weight family");
}

TaylorModel make_model(const ModelSpec& spec) {
    WeightSequence rho = make_weights(spec);
    switch (spec.kind) {
        case ModelKind::separable_rational:
            return TaylorModel::separable_rational(std::move(rho), spec.direction);
        case ModelKind::scaled_separable:
            return TaylorModel::scaled_separable(std::move(rho), spec.scaling, spec.direction);
        case ModelKind::finite_polynomial: {
            std::vector<std::pair<MultiIndex, std::vector<double>>> coeffs;
            for (const auto& [exps, v] : spec.poly_coeffs)
                coeffs.emplace_back(MultiIndex::from_dense(exps), v);
            return TaylorModel::finite_polynomial(std::move(rho), std::move(coeffs));
        }
    }
    throw std::invalid_argument("unknown model kind");
}

ClassNorm class_norm(const TaylorModel& model, const WeightSequence& weights, double p) {
    if (weights.dims() != model.dims())
        throw std::invalid_argument("class_norm: weight dimension mismatch");
    if (std::isnan(p) || !(p > 0.0)) throw std::invalid_argument("class_norm: p must be positive");

    ClassNorm result;
    if (model.kind() == ModelKind::finite_polynomial) {
        // finite support: exact sums either way
        if (std::isinf(p)) {
            double mx = 0.0;
            for (const auto& [nu, v] : model.support())
                mx = std::max(mx, euclidean_norm(v) / index_weight(weights.values(), nu));
            result.lower = result.upper = mx;
        } else {
            double sum = 0.0;
            for (const auto& [nu, v] : model.support())
                sum += std::pow(euclidean_norm(v) / index_weight(weights.values(), nu), p);
            result.lower = result.upper = std::pow(sum, 1.0 / p);
        }
        return result;
    }

    // separable kinds: weights^nu ||t_nu|| = ||w|| prod_j (c sigma_j / rho_j)^{nu_j}
    const double c = model.scaling();
    std::vector<double> ratios(model.dims());
    for (std::uint32_t j = 0; j < model.dims(); ++j)
        ratios[j] = c * weights.values()[j] / model.rho().values()[j];

    if (std::isinf(p)) {
        for (double g : ratios)
            if (g > 1.0) {
                result.status = ClassNorm::Status::divergent;
                result.lower = result.upper = kInf;
                return result;
            }
        result.lower = result.upper = model.direction_norm(); // sup attained at nu = 0
        return result;
    }
    double prod = 1.0;
    for (double g : ratios) {
        if (g >= 1.0) {
            result.status = ClassNorm::Status::divergent;
            result.lower = result.upper = kInf;
            return result;
        }
        prod /= 1.0 - std::pow(g, p);
    }
    result.lower = result.upper = model.direction_norm() * std::pow(prod, 1.0 / p);
    return result;
}

double embedding_constant(const WeightSequence& rho, const ExponentProfile& profile) {
    if (std::isinf(profile.p_conjugate())) return 1.0; // p = 1
    double prod = 1.0;
    for (double v : rho.values()) prod /= 1.0 - std::pow(v, -profile.q());
    return std::pow(prod, 1.0 / profile.p_conjugate());
}

} // namespace anisolib
