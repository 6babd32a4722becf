#include "anisolib/multi_index.hpp"

#include <algorithm>
#include <queue>
#include <stdexcept>
#include <unordered_set>

namespace anisolib {

MultiIndex MultiIndex::unit(std::uint32_t dim) {
    if (dim == 0) throw std::invalid_argument("multi-index dimensions are 1-based");
    MultiIndex nu;
    nu.entries_.emplace_back(dim, 1u);
    return nu;
}

MultiIndex MultiIndex::from_dense(std::span<const std::uint32_t> exponents) {
    MultiIndex nu;
    for (std::size_t i = 0; i < exponents.size(); ++i)
        if (exponents[i] > 0) nu.entries_.emplace_back(static_cast<std::uint32_t>(i + 1), exponents[i]);
    return nu;
}

std::uint32_t MultiIndex::exponent(std::uint32_t dim) const {
    for (const auto& [d, e] : entries_)
        if (d == dim) return e;
    return 0;
}

std::uint32_t MultiIndex::total_degree() const {
    std::uint32_t sum = 0;
    for (const auto& [d, e] : entries_) sum += e;
    return sum;
}

std::uint32_t MultiIndex::max_dim() const {
    return entries_.empty() ? 0 : entries_.back().first;
}

MultiIndex MultiIndex::incremented(std::uint32_t dim) const {
    MultiIndex out = *this;
    auto it = std::lower_bound(out.entries_.begin(), out.entries_.end(), dim,
                               [](const Entry& e, std::uint32_t d) { return e.first < d; });
    if (it != out.entries_.end() && it->first == dim)
        ++it->second;
    else
        out.entries_.insert(it, {dim, 1u});
    return out;
}

MultiIndex MultiIndex::decremented(std::uint32_t dim) const {
    MultiIndex out = *this;
    auto it = std::lower_bound(out.entries_.begin(), out.entries_.end(), dim,
                               [](const Entry& e, std::uint32_t d) { return e.first < d; });
    if (it == out.entries_.end() || it->first != dim)
        throw std::invalid_argument("cannot decrement a zero exponent");
    if (--it->second == 0) out.entries_.erase(it);
    return out;
}

std::vector<std::uint32_t> MultiIndex::dense(std::uint32_t dims) const {
    std::vector<std::uint32_t> out(dims, 0u);
    for (const auto& [d, e] : entries_) {
        if (d > dims) throw std::invalid_argument("multi-index exceeds requested dimension count");
        out[d - 1] = e;
    }
    return out;
}

std::string MultiIndex::to_string() const {
    std::string s = "(";
    std::uint32_t next = 1;
    for (const auto& [d, e] : entries_) {
        for (; next < d; ++next) s += "0,";
        s += std::to_string(e) + ",";
        next = d + 1;
    }
    if (s.size() > 1) s.pop_back();
    s += ")";
    return s;
}

bool dominated_by(const MultiIndex& lo, const MultiIndex& hi) {
    for (const auto& [d, e] : lo.entries())
        if (hi.exponent(d) < e) return false;
    return true;
}

int lex_compare(const MultiIndex& a, const MultiIndex& b) {
    const auto& ea = a.entries();
    const auto& eb = b.entries();
    std::size_t ia = 0, ib = 0;
    while (ia < ea.size() || ib < eb.size()) {
        const std::uint32_t da = ia < ea.size() ? ea[ia].first : UINT32_MAX;
        const std::uint32_t db = ib < eb.size() ? eb[ib].first : UINT32_MAX;
        const std::uint32_t dim = std::min(da, db);
        const std::uint32_t va = (da == dim) ? ea[ia].second : 0;
        const std::uint32_t vb = (db == dim) ? eb[ib].second : 0;
        if (va != vb) return va < vb ? -1 : 1;
        if (da == dim) ++ia;
        if (db == dim) ++ib;
    }
    return 0;
}

bool MultiIndexLess::operator()(const MultiIndex& a, const MultiIndex& b) const {
    const auto da = a.total_degree(), db = b.total_degree();
    if (da != db) return da < db;
    return lex_compare(a, b) < 0;
}

std::size_t MultiIndexHash::operator()(const MultiIndex& nu) const {
    std::size_t h = 0x9e3779b97f4a7c15ull;
    for (const auto& [d, e] : nu.entries()) {
        h ^= (static_cast<std::size_t>(d) << 32 | e) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    }
    return h;
}

double monomial(const MultiIndex& nu, std::span<const double> y) {
    double prod = 1.0;
    for (const auto& [d, e] : nu.entries()) {
        if (d > y.size()) throw std::invalid_argument("monomial: point has too few dimensions");
        const double yj = y[d - 1];
        for (std::uint32_t k = 0; k < e; ++k) prod *= yj;
    }
    return prod;
}

namespace {

double binomial(std::uint32_t n, std::uint32_t k) {
    if (k > n) return 0.0;
    k = std::min(k, n - k);
    double c = 1.0;
    for (std::uint32_t i = 1; i <= k; ++i) c = c * static_cast<double>(n - k + i) / static_cast<double>(i);
    return c;
}

} // namespace

double binomial_product(const MultiIndex& mu, const MultiIndex& nu) {
    if (!dominated_by(nu, mu)) throw std::invalid_argument("binomial_product requires nu <= mu");
    double prod = 1.0;
    for (const auto& [d, e] : nu.entries()) prod *= binomial(mu.exponent(d), e);
    return prod;
}

double index_weight(std::span<const double> rho, const MultiIndex& nu) {
    double w = 1.0;
    for (const auto& [d, e] : nu.entries()) {
        if (d > rho.size()) throw std::invalid_argument("index exceeds weight dimension count");
        const double inv = 1.0 / rho[d - 1];
        for (std::uint32_t k = 0; k < e; ++k) w *= inv;
    }
    return w;
}

void for_each_index_up_to_degree(std::uint32_t dims, std::uint32_t max_degree,
                                 const std::function<void(const MultiIndex&)>& visit) {
    std::vector<std::uint32_t> exps(dims, 0u);
    const std::function<void(std::uint32_t, std::uint32_t)> rec = [&](std::uint32_t dim, std::uint32_t budget) {
        if (dim == dims) {
            visit(MultiIndex::from_dense(exps));
            return;
        }
        for (std::uint32_t e = 0; e <= budget; ++e) {
            exps[dim] = e;
            rec(dim + 1, budget - e);
        }
        exps[dim] = 0;
    };
    rec(0, max_degree);
}

LowerSet LowerSet::from_members(std::vector<MultiIndex> members) {
    if (!is_lower_set(members)) throw std::invalid_argument("members do not form a lower set");
    if (members.empty() || !members.front().is_zero())
        throw std::invalid_argument("a LowerSet must contain the zero index first");
    return LowerSet(std::move(members));
}

bool LowerSet::contains(const MultiIndex& nu) const {
    return std::find(members_.begin(), members_.end(), nu) != members_.end();
}

bool is_lower_set(std::span<const MultiIndex> indices) {
    std::unordered_set<MultiIndex, MultiIndexHash> present(indices.begin(), indices.end());
    for (const auto& nu : indices)
        for (const auto& [d, e] : nu.entries())
            if (!present.count(nu.decremented(d))) return false;
    return true;
}

namespace {

// Selection order: weight descending, then degree ascending, then lex ascending.
struct Candidate {
    double weight;
    std::uint32_t degree;
    MultiIndex nu;
};

bool selected_before(const Candidate& a, const Candidate& b) {
    if (a.weight != b.weight) return a.weight > b.weight;
    if (a.degree != b.degree) return a.degree < b.degree;
    return lex_compare(a.nu, b.nu) < 0;
}

} // namespace

LowerSet top_terms(std::span<const double> rho, std::size_t count, std::size_t node_budget) {
    if (count == 0) throw std::invalid_argument("top_terms requires count >= 1");
    if (rho.empty()) throw std::invalid_argument("top_terms requires at least one dimension");
    for (std::size_t j = 0; j < rho.size(); ++j)
        if (!(rho[j] > 1.0))
            throw std::invalid_argument("rho_j > 1 violated at j=" + std::to_string(j + 1));
    if (count > node_budget) throw std::invalid_argument("top_terms count exceeds node budget");

    const auto ge = [](const Candidate& a, const Candidate& b) { return selected_before(b, a); };
    std::priority_queue<Candidate, std::vector<Candidate>, decltype(ge)> frontier(ge);
    std::unordered_set<MultiIndex, MultiIndexHash> seen;

    const auto push = [&](MultiIndex nu) {
        if (seen.count(nu)) return;
        if (seen.size() >= node_budget) throw std::invalid_argument("top_terms node budget exceeded");
        Candidate c{index_weight(rho, nu), nu.total_degree(), nu};
        seen.insert(nu);
        frontier.push(std::move(c));
    };

    push(MultiIndex{});
    std::vector<MultiIndex> members;
    members.reserve(count);
    while (members.size() < count) {
        Candidate best = frontier.top();
        frontier.pop();
        for (std::uint32_t d = 1; d <= rho.size(); ++d) push(best.nu.incremented(d));
        members.push_back(std::move(best.nu));
    }
    return LowerSet::from_members(std::move(members));
}

} // namespace anisolib
