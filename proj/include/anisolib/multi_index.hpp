#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace anisolib {

// Finitely supported multi-index: sparse map from 1-based dimension to a
// positive exponent. Unlisted dimensions carry exponent 0.
class MultiIndex {
public:
    using Entry = std::pair<std::uint32_t, std::uint32_t>; // (dim, exponent)

    MultiIndex() = default;

    static MultiIndex unit(std::uint32_t dim);
    // Dense exponents for dims 1..n; zeros are dropped.
    static MultiIndex from_dense(std::span<const std::uint32_t> exponents);

    const std::vector<Entry>& entries() const { return entries_; }
    std::uint32_t exponent(std::uint32_t dim) const;
    std::uint32_t total_degree() const;
    std::uint32_t max_dim() const; // 0 for the zero index
    bool is_zero() const { return entries_.empty(); }

    MultiIndex incremented(std::uint32_t dim) const;
    MultiIndex decremented(std::uint32_t dim) const; // requires exponent(dim) >= 1

    std::vector<std::uint32_t> dense(std::uint32_t dims) const;
    std::string to_string() const;

    bool operator==(const MultiIndex& other) const { return entries_ == other.entries_; }

private:
    std::vector<Entry> entries_; // sorted by dim, exponents >= 1
};

// true iff lo_j <= hi_j for all j
bool dominated_by(const MultiIndex& lo, const MultiIndex& hi);

// -1/0/1 for lexicographic order on the dense tuple (nu_1, nu_2, ...)
int lex_compare(const MultiIndex& a, const MultiIndex& b);

// Canonical total order used wherever deterministic iteration matters:
// total degree ascending, then lexicographic ascending.
struct MultiIndexLess {
    bool operator()(const MultiIndex& a, const MultiIndex& b) const;
};

struct MultiIndexHash {
    std::size_t operator()(const MultiIndex& nu) const;
};

// prod_j y_j^{nu_j} (y is 0-based over dims 1..y.size())
double monomial(const MultiIndex& nu, std::span<const double> y);

// prod_j C(mu_j, nu_j); requires nu <= mu componentwise
double binomial_product(const MultiIndex& mu, const MultiIndex& nu);

// prod_j rho_j^{-nu_j} for materialized weights rho (0-based storage)
double index_weight(std::span<const double> rho, const MultiIndex& nu);

// Visits every nu supported on dims 1..dims with |nu| <= max_degree.
void for_each_index_up_to_degree(std::uint32_t dims, std::uint32_t max_degree,
                                 const std::function<void(const MultiIndex&)>& visit);

// Downward-closed set of multi-indices, kept in selection order with the zero
// index first.
class LowerSet {
public:
    LowerSet() = default;
    // Validates downward closure and zero membership; throws on violation.
    static LowerSet from_members(std::vector<MultiIndex> members);

    const std::vector<MultiIndex>& members() const { return members_; }
    std::size_t size() const { return members_.size(); }
    bool contains(const MultiIndex& nu) const;

private:
    explicit LowerSet(std::vector<MultiIndex> members) : members_(std::move(members)) {}
    std::vector<MultiIndex> members_;
};

bool is_lower_set(std::span<const MultiIndex> indices);

// The `count` multi-indices over dims 1..rho.size() maximizing
// prod_j rho_j^{-nu_j}, ties broken by (total degree asc, lex asc).
// Best-first frontier search with duplicate suppression; the result is
// always downward closed. Throws if enumeration would exceed node_budget.
LowerSet top_terms(std::span<const double> rho, std::size_t count,
                   std::size_t node_budget = 10'000'000);

} // namespace anisolib
