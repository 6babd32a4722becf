#include "anisolib/recenter.hpp"

#include <cmath>
#include <deque>
#include <stdexcept>
#include <string>
#include <unordered_set>

namespace anisolib {

namespace {

double pow_u32(double base, std::uint32_t e) {
    double r = 1.0;
    for (std::uint32_t i = 0; i < e; ++i) r *= base;
    return r;
}

void validate_point(std::span<const double> y, std::uint32_t dims, const char* who) {
    if (y.size() != dims) throw std::invalid_argument(std::string(who) + ": point dimension mismatch");
    for (double yj : y)
        if (!(std::abs(yj) <= 1.0)) throw std::invalid_argument(std::string(who) + ": |y_j| <= 1 violated");
}

// prod_j base_j^{nu_j} for an elementwise vector base
double vector_power(std::span<const double> base, const MultiIndex& nu) {
    double prod = 1.0;
    for (const auto& [d, e] : nu.entries()) prod *= pow_u32(base[d - 1], e);
    return prod;
}

} // namespace

WeightedCoeffSeq::WeightedCoeffSeq(std::uint32_t value_dim) : value_dim_(value_dim) {
    if (value_dim == 0) throw std::invalid_argument("value dimension must be >= 1");
}

void WeightedCoeffSeq::set(const MultiIndex& nu, std::vector<double> value) {
    if (value.size() != value_dim_) throw std::invalid_argument("coefficient value dimension mismatch");
    items_[nu] = std::move(value);
}

const std::vector<double>* WeightedCoeffSeq::find(const MultiIndex& nu) const {
    auto it = items_.find(nu);
    return it == items_.end() ? nullptr : &it->second;
}

double WeightedCoeffSeq::lp_norm(double p) const {
    if (std::isinf(p)) {
        double mx = 0.0;
        for (const auto& [nu, v] : items_) {
            double s = 0.0;
            for (double x : v) s += x * x;
            mx = std::max(mx, std::sqrt(s));
        }
        return mx;
    }
    if (!(p > 0.0)) throw std::invalid_argument("lp_norm: p must be positive");
    double sum = 0.0;
    for (const auto& [nu, v] : items_) {
        double s = 0.0;
        for (double x : v) s += x * x;
        sum += std::pow(std::sqrt(s), p);
    }
    return std::pow(sum, 1.0 / p);
}

WeightedCoeffSeq recenter_coeffs(const WeightSequence& rho, std::span<const double> y,
                                 const WeightedCoeffSeq& v, std::size_t node_budget) {
    validate_point(y, rho.dims(), "recenter_coeffs");
    if (v.support_size() > node_budget) throw std::invalid_argument("coefficient support over budget");

    // downward closure of the input support
    std::unordered_set<MultiIndex, MultiIndexHash> closure;
    std::deque<MultiIndex> pending;
    for (const auto& [mu, val] : v.items()) {
        if (mu.max_dim() > rho.dims())
            throw std::invalid_argument("coefficient support exceeds weight dimensions");
        if (closure.insert(mu).second) pending.push_back(mu);
    }
    while (!pending.empty()) {
        MultiIndex nu = pending.front();
        pending.pop_front();
        for (const auto& [d, e] : nu.entries()) {
            MultiIndex down = nu.decremented(d);
            if (closure.size() >= node_budget)
                throw std::invalid_argument("recenter_coeffs closure over node budget");
            if (closure.insert(down).second) pending.push_back(down);
        }
    }

    std::vector<double> shifted_base(rho.dims()); // rho_j - |y_j|
    for (std::uint32_t j = 0; j < rho.dims(); ++j) shifted_base[j] = rho.values()[j] - std::abs(y[j]);

    WeightedCoeffSeq out(v.value_dim());
    for (const auto& nu : closure) {
        std::vector<double> acc(v.value_dim(), 0.0);
        for (const auto& [mu, val] : v.items()) {
            if (!dominated_by(nu, mu)) continue;
            double factor = binomial_product(mu, nu) * index_weight(rho.values(), mu);
            // y^{mu - nu}, signed
            for (const auto& [d, e] : mu.entries()) {
                const std::uint32_t down = e - nu.exponent(d);
                factor *= pow_u32(y[d - 1], down);
            }
            for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += val[i] * factor;
        }
        const double weight = vector_power(shifted_base, nu);
        for (double& x : acc) x *= weight;
        out.set(nu, std::move(acc));
    }
    return out;
}

double recenter_norm_bound(const WeightSequence& rho, std::span<const double> y, double p) {
    validate_point(y, rho.dims(), "recenter_norm_bound");
    if (std::isnan(p) || !(p >= 1.0)) throw std::invalid_argument("p in [1, inf] violated");
    if (p == 1.0) return 1.0;
    double m_inf = 1.0;
    for (std::uint32_t j = 0; j < rho.dims(); ++j)
        m_inf /= 1.0 - std::abs(y[j]) / rho.values()[j];
    if (std::isinf(p)) return m_inf;
    return std::pow(m_inf, 1.0 - 1.0 / p);
}

ShiftedCoeffs shifted_coeffs(const TaylorModel& model, std::span<const double> center,
                             const LowerSet& index_set, std::uint32_t degree_cap,
                             double tail_tolerance) {
    const std::uint32_t d = model.dims();
    if (center.size() != d) throw std::invalid_argument("shifted_coeffs: center dimension mismatch");
    for (double c : center)
        if (!(std::abs(c) < 1.0)) throw std::invalid_argument("shifted_coeffs: center must lie in (-1,1)^d");

    if (model.kind() == ModelKind::finite_polynomial) {
        ShiftedCoeffs out = shifted_coeffs_via_series(model, center, index_set, degree_cap);
        if (out.tail_bound > tail_tolerance)
            throw std::invalid_argument("shifted_coeffs: truncation tail " + std::to_string(out.tail_bound) +
                                        " exceeds tolerance");
        return out;
    }

    // separable kinds: per-dimension closed form
    //   \partial_nu u(c)/nu! = w prod_j (s/rho_j)^{nu_j} (1 - s c_j/rho_j)^{-(nu_j + 1)}
    const double s = model.scaling();
    ShiftedCoeffs out;
    out.coeffs.reserve(index_set.size());
    for (const auto& nu : index_set.members()) {
        double scalar = 1.0;
        for (std::uint32_t j = 1; j <= d; ++j) {
            const double denom = 1.0 - s * center[j - 1] / model.rho().values()[j - 1];
            const std::uint32_t e = nu.exponent(j);
            scalar *= pow_u32(s / model.rho().values()[j - 1], e) / pow_u32(denom, e + 1);
        }
        std::vector<double> value(model.direction().begin(), model.direction().end());
        for (double& x : value) x *= scalar;
        out.coeffs.emplace_back(nu, std::move(value));
    }
    return out;
}

ShiftedCoeffs shifted_coeffs_via_series(const TaylorModel& model, std::span<const double> center,
                                        const LowerSet& index_set, std::uint32_t degree_cap) {
    const std::uint32_t d = model.dims();
    if (center.size() != d) throw std::invalid_argument("shifted_coeffs: center dimension mismatch");
    for (double c : center)
        if (!(std::abs(c) < 1.0)) throw std::invalid_argument("shifted_coeffs: center must lie in (-1,1)^d");

    ShiftedCoeffs out;
    out.truncated = true;
    for (const auto& nu : index_set.members()) {
        std::vector<double> acc(model.value_dim(), 0.0);
        double abs_partial = 0.0;
        const std::uint32_t nu_deg = nu.total_degree();
        const std::uint32_t slack = nu_deg > degree_cap ? 0 : degree_cap - nu_deg;
        // mu = nu + tau over all |tau| <= slack
        for_each_index_up_to_degree(d, slack, [&](const MultiIndex& tau) {
            MultiIndex mu = nu;
            for (const auto& [dim, e] : tau.entries())
                for (std::uint32_t i = 0; i < e; ++i) mu = mu.incremented(dim);
            const std::vector<double> t_mu = model.coeff(mu);
            double factor = binomial_product(mu, nu);
            double abs_factor = factor;
            for (const auto& [dim, e] : tau.entries()) {
                factor *= pow_u32(center[dim - 1], e);
                abs_factor *= pow_u32(std::abs(center[dim - 1]), e);
            }
            double t_norm = 0.0;
            for (std::size_t i = 0; i < acc.size(); ++i) {
                acc[i] += t_mu[i] * factor;
                t_norm += t_mu[i] * t_mu[i];
            }
            abs_partial += std::sqrt(t_norm) * abs_factor;
        });

        // majorant of the dropped series mass
        double tail = 0.0;
        if (model.kind() == ModelKind::finite_polynomial) {
            for (const auto& [mu, v] : model.support()) {
                if (mu.total_degree() <= degree_cap || !dominated_by(nu, mu)) continue;
                double t_norm = 0.0;
                for (double x : v) t_norm += x * x;
                double abs_factor = binomial_product(mu, nu);
                for (const auto& [dim, e] : mu.entries())
                    abs_factor *= pow_u32(std::abs(center[dim - 1]), e - nu.exponent(dim));
                tail += std::sqrt(t_norm) * abs_factor;
            }
        } else {
            // full absolute series has the same closed form with |center|
            const double s = model.scaling();
            double abs_total = 1.0;
            for (std::uint32_t j = 1; j <= d; ++j) {
                const double denom = 1.0 - s * std::abs(center[j - 1]) / model.rho().values()[j - 1];
                const std::uint32_t e = nu.exponent(j);
                abs_total *= pow_u32(s / model.rho().values()[j - 1], e) / pow_u32(denom, e + 1);
            }
            abs_total *= model.direction_norm();
            tail = std::max(0.0, abs_total - abs_partial);
        }
        out.tail_bound = std::max(out.tail_bound, tail);
        out.coeffs.emplace_back(nu, std::move(acc));
    }
    return out;
}

} // namespace anisolib
