#include "anisolib/weights.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace anisolib {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_positive_finite(double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v))
        throw std::invalid_argument(std::string(name) + " must be positive and finite");
}

} // namespace

WeightSequence::WeightSequence(WeightFamily fam, std::vector<double> values, double M, double s, double g)
    : family_(fam), values_(std::move(values)), M_(M), s_(s), g_(g) {
    if (values_.empty()) throw std::invalid_argument("weight sequence needs at least one dimension");
    for (std::size_t j = 0; j < values_.size(); ++j)
        if (!(values_[j] > 1.0) || !std::isfinite(values_[j]))
            throw std::invalid_argument("rho_j > 1 violated at j=" + std::to_string(j + 1));
    min_value_ = *std::min_element(values_.begin(), values_.end());
    nondecreasing_ = std::is_sorted(values_.begin(), values_.end());
}

WeightSequence WeightSequence::from_list(std::vector<double> values) {
    return WeightSequence(WeightFamily::explicit_list, std::move(values), 0, 0, 0);
}

WeightSequence WeightSequence::power_family(double M, double s, std::uint32_t dims) {
    require_positive_finite(M, "M");
    if (dims == 0) throw std::invalid_argument("dims must be >= 1");
    std::vector<double> v(dims);
    for (std::uint32_t j = 1; j <= dims; ++j) v[j - 1] = M * std::pow(static_cast<double>(j), s);
    return WeightSequence(WeightFamily::power, std::move(v), M, s, 0);
}

WeightSequence WeightSequence::geometric_family(double M, double g, std::uint32_t dims) {
    require_positive_finite(M, "M");
    if (!(g > 1.0)) throw std::invalid_argument("geometric family requires g > 1");
    if (dims == 0) throw std::invalid_argument("dims must be >= 1");
    std::vector<double> v(dims);
    double cur = M;
    for (std::uint32_t j = 1; j <= dims; ++j) {
        cur *= g;
        v[j - 1] = cur; // M g^j
    }
    return WeightSequence(WeightFamily::geometric, std::move(v), M, 0, g);
}

double WeightSequence::at(std::uint32_t j) const {
    if (j == 0 || j > values_.size()) throw std::invalid_argument("weight index out of range");
    return values_[j - 1];
}

std::vector<double> WeightSequence::inverse_values() const {
    std::vector<double> inv(values_.size());
    for (std::size_t i = 0; i < values_.size(); ++i) inv[i] = 1.0 / values_[i];
    return inv;
}

WeightSequence WeightSequence::powered(double exponent) const {
    if (!(exponent > 0.0)) throw std::invalid_argument("powered exponent must be positive");
    if (exponent == 1.0) {
        WeightSequence copy = *this;
        copy.family_ = WeightFamily::explicit_list;
        return copy;
    }
    std::vector<double> v(values_.size());
    for (std::size_t i = 0; i < values_.size(); ++i) v[i] = std::pow(values_[i], exponent);
    return WeightSequence(WeightFamily::explicit_list, std::move(v), 0, 0, 0);
}

TailMode WeightSequence::default_tail_mode() const {
    return family_ == WeightFamily::explicit_list ? TailMode::truncated : TailMode::analytic;
}

double WeightSequence::tail_q_sum(std::uint32_t J, double q, TailMode mode) const {
    require_positive_finite(q, "q");
    if (mode == TailMode::family_default) mode = default_tail_mode();
    if (mode == TailMode::truncated || family_ == WeightFamily::explicit_list) {
        double sum = 0.0;
        for (std::uint32_t j = J + 1; j <= dims(); ++j) sum += std::pow(values_[j - 1], -q);
        return sum;
    }
    if (family_ == WeightFamily::geometric) {
        // M^{-q} sum_{j>J} g^{-qj} = M^{-q} g^{-q(J+1)} / (1 - g^{-q})
        const double gq = std::pow(g_, -q);
        return std::pow(M_, -q) * std::pow(g_, -q * (J + 1)) / (1.0 - gq);
    }
    // power family: M^{-q} sum_{j>J} j^{-sq}; needs s q > 1 to converge.
    const double a = s_ * q;
    if (!(a > 1.0))
        throw std::invalid_argument("analytic tail divergent: power family needs s*q > 1 (s*q=" +
                                    std::to_string(a) + ")");
    const std::uint32_t explicit_terms = 50;
    double sum = 0.0;
    for (std::uint32_t j = J + 1; j <= J + explicit_terms; ++j)
        sum += std::pow(static_cast<double>(j), -a);
    const double x0 = static_cast<double>(J + explicit_terms);
    sum += std::pow(x0, 1.0 - a) / (a - 1.0); // integral majorant of the remainder
    return std::pow(M_, -q) * sum;
}

ExponentProfile ExponentProfile::create(double p, double q) {
    if (std::isnan(p) || (!(p >= 1.0)))
        throw std::invalid_argument("p in [1, inf] violated (p=" + std::to_string(p) + ")");
    if (!(q > 0.0) || !std::isfinite(q))
        throw std::invalid_argument("q > 0 violated");
    ExponentProfile prof;
    prof.p_ = p;
    prof.q_ = q;
    if (p == 1.0)
        prof.p_conj_ = kInf;
    else if (std::isinf(p))
        prof.p_conj_ = 1.0;
    else
        prof.p_conj_ = p / (p - 1.0);
    if (!(q < prof.p_conj_))
        throw std::invalid_argument("q < p/(p-1) violated (q=" + std::to_string(q) +
                                    ", p'=" + std::to_string(prof.p_conj_) + ")");
    prof.theta_ = std::isinf(prof.p_conj_) ? 1.0 : 1.0 - q / prof.p_conj_;
    prof.q_theta_ = (prof.theta_ == 1.0) ? q : q / prof.theta_;
    prof.rate_ = -1.0 + (std::isinf(p) ? 0.0 : 1.0 / p) + 1.0 / q;
    // q < p' makes the rate positive; guard against rounding at the boundary
    if (!(prof.rate_ > 0.0)) throw std::invalid_argument("rate r = -1 + 1/p + 1/q must be positive");
    return prof;
}

double lq_norm(std::span<const double> values, double q) {
    for (double v : values)
        if (v < 0.0 || std::isnan(v)) throw std::invalid_argument("lq_norm entries must be nonnegative");
    if (std::isinf(q)) {
        double mx = 0.0;
        for (double v : values) mx = std::max(mx, v);
        return mx;
    }
    require_positive_finite(q, "q");
    double sum = 0.0;
    if (q == 1.0) {
        for (double v : values) sum += v;
        return sum;
    }
    for (double v : values) sum += std::pow(v, q);
    return std::pow(sum, 1.0 / q);
}

double norm_equivalence_beta(double rho_min, double q) {
    if (!(rho_min > 1.0)) throw std::invalid_argument("rho_min > 1 violated");
    require_positive_finite(q, "q");
    const double x = std::pow(rho_min, -q); // in (0,1)
    return -std::log1p(-x) / x;
}

double norm_equivalence_constant(const WeightSequence& rho, double q) {
    const double beta = norm_equivalence_beta(rho.min_value(), q);
    double sum_q = 0.0;
    for (double v : rho.values()) sum_q += std::pow(v, -q);
    return std::pow(beta, 1.0 / q) * std::exp(beta / q * sum_q);
}

WeightSequence theta_weights(const WeightSequence& rho, const ExponentProfile& profile) {
    return rho.powered(profile.theta());
}

WeightSequence recentered_weights(const WeightSequence& weights,
                                  std::span<const double> center,
                                  std::span<const double> halfwidths) {
    const std::uint32_t d = weights.dims();
    if (center.size() != d || halfwidths.size() != d)
        throw std::invalid_argument("recentered_weights: center/halfwidth size mismatch");
    std::vector<double> out(d);
    for (std::uint32_t j = 0; j < d; ++j) {
        const double c = std::abs(center[j]);
        const double lam = halfwidths[j];
        if (!(lam > 0.0)) throw std::invalid_argument("cell halfwidth must be positive");
        if (c + lam > 1.0 + 1e-12)
            throw std::invalid_argument("cell not contained in [-1,1]^d at dim " + std::to_string(j + 1));
        out[j] = (weights.values()[j] - c) / lam;
    }
    return WeightSequence::from_list(std::move(out));
}

NormBracket fstar_lq_norm(const WeightSequence& rho, double q, std::uint32_t max_degree) {
    require_positive_finite(q, "q");
    double truncated = 0.0;
    for_each_index_up_to_degree(rho.dims(), max_degree, [&](const MultiIndex& nu) {
        if (nu.is_zero()) return;
        truncated += std::pow(index_weight(rho.values(), nu), q);
    });
    double total = 1.0;
    for (double v : rho.values()) total /= 1.0 - std::pow(v, -q);
    total -= 1.0; // exclude the zero index
    const double remainder = std::max(0.0, total - truncated);
    return NormBracket{std::pow(truncated, 1.0 / q), std::pow(truncated + remainder, 1.0 / q)};
}

} // namespace anisolib
