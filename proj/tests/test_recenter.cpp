#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <limits>
#include <vector>

#include "anisolib/recenter.hpp"
#include "anisolib/sampling.hpp"

using namespace anisolib;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
MultiIndex mi(std::vector<std::uint32_t> exps) { return MultiIndex::from_dense(exps); }

// random finite-support scalar sequence over dims 1..d, degree <= max_deg
WeightedCoeffSeq random_seq(std::uint64_t seed, std::uint64_t tag, std::uint32_t d,
                            std::uint32_t max_deg, bool nonnegative) {
    WeightedCoeffSeq v(1);
    std::uint64_t n = 0;
    for_each_index_up_to_degree(d, max_deg, [&](const MultiIndex& nu) {
        const double u = uniform01(mix_keys(seed, tag, ++n, 0));
        double value = nonnegative ? u : 2.0 * u - 1.0;
        if (uniform01(mix_keys(seed, tag, n, 1)) < 0.3) value = 0.0; // sparsify
        if (value != 0.0) v.set(nu, {value});
    });
    if (v.support_size() == 0) v.set(MultiIndex{}, {1.0});
    return v;
}

std::vector<double> random_point(std::uint64_t seed, std::uint64_t tag, std::uint32_t d,
                                 bool nonnegative) {
    std::vector<double> y(d);
    for (std::uint32_t j = 0; j < d; ++j) {
        const double u = uniform01(mix_keys(seed, tag, 77 + j, 2));
        y[j] = nonnegative ? u : 2.0 * u - 1.0;
    }
    return y;
}

WeightSequence random_weights(std::uint64_t seed, std::uint64_t tag, std::uint32_t d) {
    std::vector<double> rho(d);
    for (std::uint32_t j = 0; j < d; ++j)
        rho[j] = 1.5 + 3.0 * uniform01(mix_keys(seed, tag, 200 + j, 3));
    return WeightSequence::from_list(std::move(rho));
}

} // namespace

TEST_CASE("recentering a unit mass at the zero index is the identity") {
    const WeightSequence rho = WeightSequence::from_list({2.0, 3.0});
    WeightedCoeffSeq v(1);
    v.set(MultiIndex{}, {0.7});
    const WeightedCoeffSeq out = recenter_coeffs(rho, std::vector<double>{0.5, -0.5}, v);
    CHECK(out.support_size() == 1);
    REQUIRE(out.find(MultiIndex{}) != nullptr);
    CHECK((*out.find(MultiIndex{}))[0] == doctest::Approx(0.7).epsilon(1e-15));
}

TEST_CASE("recentering the separable-rational coefficient sequence") {
    // v_k = rho^k t_k = 1 up to degree 30; every output entry approaches
    // rho/(rho - ybar) = 4/3
    const WeightSequence rho = WeightSequence::from_list({2.0});
    WeightedCoeffSeq v(1);
    for (std::uint32_t k = 0; k <= 30; ++k) v.set(mi({k}), {1.0});
    const WeightedCoeffSeq out = recenter_coeffs(rho, std::vector<double>{0.5}, v);
    for (std::uint32_t k = 0; k <= 5; ++k) {
        REQUIRE(out.find(mi({k})) != nullptr);
        CHECK((*out.find(mi({k})))[0] == doctest::Approx(4.0 / 3.0).epsilon(1e-7));
    }
}

TEST_CASE("l1 mass is preserved exactly on nonnegative data") {
    for (std::uint64_t t = 0; t < 40; ++t) {
        const std::uint32_t d = 1 + static_cast<std::uint32_t>(t % 3);
        const WeightSequence rho = random_weights(11, t, d);
        const WeightedCoeffSeq v = random_seq(11, t, d, 6, /*nonnegative=*/true);
        const auto y = random_point(11, t, d, /*nonnegative=*/true);
        const WeightedCoeffSeq out = recenter_coeffs(rho, y, v);
        CHECK(out.lp_norm(1.0) ==
              doctest::Approx(v.lp_norm(1.0)).epsilon(1e-12));
    }
}

TEST_CASE("l1 never expands, even for signed and vector data") {
    for (std::uint64_t t = 0; t < 40; ++t) {
        const std::uint32_t d = 1 + static_cast<std::uint32_t>(t % 3);
        const WeightSequence rho = random_weights(13, t, d);
        WeightedCoeffSeq v(2);
        std::uint64_t n = 0;
        for_each_index_up_to_degree(d, 5, [&](const MultiIndex& nu) {
            const double a = 2.0 * uniform01(mix_keys(13, t, ++n, 4)) - 1.0;
            const double b = 2.0 * uniform01(mix_keys(13, t, n, 5)) - 1.0;
            v.set(nu, {a, b});
        });
        const auto y = random_point(13, t, d, /*nonnegative=*/false);
        const WeightedCoeffSeq out = recenter_coeffs(rho, y, v);
        CHECK(out.lp_norm(1.0) <= v.lp_norm(1.0) + 1e-12);
    }
}

TEST_CASE("lp contraction against the product bound") {
    for (std::uint64_t t = 0; t < 60; ++t) {
        const std::uint32_t d = 1 + static_cast<std::uint32_t>(t % 3);
        const WeightSequence rho = random_weights(17, t, d);
        const WeightedCoeffSeq v = random_seq(17, t, d, 6, /*nonnegative=*/false);
        const auto y = random_point(17, t, d, /*nonnegative=*/false);
        const WeightedCoeffSeq out = recenter_coeffs(rho, y, v);
        for (const double p : {1.0, 2.0, kInf}) {
            const double bound = recenter_norm_bound(rho, y, p);
            CHECK(out.lp_norm(p) <= bound * v.lp_norm(p) + 1e-10);
        }
    }
}

TEST_CASE("norm bound worked values") {
    const WeightSequence rho = WeightSequence::from_list({2.0});
    const std::vector<double> y{1.0};
    CHECK(recenter_norm_bound(rho, y, 1.0) == 1.0);
    CHECK(recenter_norm_bound(rho, y, kInf) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(recenter_norm_bound(rho, y, 2.0) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
    CHECK_THROWS_AS(recenter_norm_bound(rho, std::vector<double>{1.5}, 2.0), std::invalid_argument);
}

TEST_CASE("the sup bound is attained by the separable witness") {
    // d=1, rho=2, ybar=1/2: every recentered entry is 4/3 = M_inf, so the
    // l_inf ratio attains the bound within truncation error
    const WeightSequence rho = WeightSequence::from_list({2.0});
    WeightedCoeffSeq v(1);
    for (std::uint32_t k = 0; k <= 40; ++k) v.set(mi({k}), {1.0});
    const std::vector<double> y{0.5};
    const WeightedCoeffSeq out = recenter_coeffs(rho, y, v);
    const double ratio = out.lp_norm(kInf) / v.lp_norm(kInf);
    CHECK(std::abs(ratio - 4.0 / 3.0) < 1e-6);
    CHECK(ratio <= recenter_norm_bound(rho, y, kInf) + 1e-12);
}

TEST_CASE("shifted coefficients: worked values") {
    SUBCASE("center 0 returns the raw coefficients") {
        const TaylorModel model =
            TaylorModel::separable_rational(WeightSequence::from_list({2.0, 4.0}));
        const LowerSet sel = top_terms(model.rho(), 4);
        const ShiftedCoeffs out =
            shifted_coeffs(model, std::vector<double>{0.0, 0.0}, sel);
        for (std::size_t i = 0; i < sel.size(); ++i) {
            const auto expected = model.coeff(sel.members()[i]);
            CHECK(out.coeffs[i].second[0] == doctest::Approx(expected[0]).epsilon(1e-14));
        }
    }
    SUBCASE("d=1 rho=2 center 0.5") {
        const TaylorModel model = TaylorModel::separable_rational(WeightSequence::from_list({2.0}));
        const LowerSet sel = top_terms(model.rho(), 2);
        const ShiftedCoeffs out = shifted_coeffs(model, std::vector<double>{0.5}, sel);
        CHECK(out.coeffs[0].second[0] == doctest::Approx(4.0 / 3.0).epsilon(1e-14));
        CHECK(out.coeffs[1].second[0] == doctest::Approx(8.0 / 9.0).epsilon(1e-14));
    }
    SUBCASE("d=2 rho=(2,4) center (0.5, 0), index (0,1)") {
        const TaylorModel model =
            TaylorModel::separable_rational(WeightSequence::from_list({2.0, 4.0}));
        const LowerSet sel = LowerSet::from_members({mi({0, 0}), mi({0, 1})});
        const ShiftedCoeffs out = shifted_coeffs(model, std::vector<double>{0.5, 0.0}, sel);
        CHECK(out.coeffs[1].second[0] == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
    }
}

TEST_CASE("series route agrees with the closed form and reports its tail") {
    const TaylorModel model =
        TaylorModel::scaled_separable(WeightSequence::from_list({2.0, 3.0}), 0.9);
    const LowerSet sel = top_terms(model.rho(), 5);
    const std::vector<double> center{0.5, -0.3};
    const ShiftedCoeffs exact = shifted_coeffs(model, center, sel);
    const ShiftedCoeffs series = shifted_coeffs_via_series(model, center, sel, 12);
    CHECK(series.truncated);
    CHECK(series.tail_bound > 0.0);
    for (std::size_t i = 0; i < sel.size(); ++i)
        CHECK(std::abs(series.coeffs[i].second[0] - exact.coeffs[i].second[0]) <=
              series.tail_bound + 1e-13);

    // a low cap leaves a visible tail; the strict entry point rejects it
    const ShiftedCoeffs coarse = shifted_coeffs_via_series(model, center, sel, 6);
    CHECK(coarse.tail_bound > 1e-6);
}

TEST_CASE("recentering agrees with shifted coefficients on the model sequence") {
    // feed v_nu = rho^nu t_nu truncated at degree D; outputs must match
    // (rho-|y|)^nu * shifted(nu) within the dropped-tail majorant
    const WeightSequence rho = WeightSequence::from_list({2.0, 4.0});
    const TaylorModel model = TaylorModel::separable_rational(rho);
    const std::uint32_t D = 24;
    WeightedCoeffSeq v(1);
    for_each_index_up_to_degree(2, D, [&](const MultiIndex& nu) {
        v.set(nu, {model.coeff(nu)[0] / index_weight(rho.values(), nu)});
    });
    const std::vector<double> y{0.5, 0.25};
    const WeightedCoeffSeq mapped = recenter_coeffs(rho, y, v);
    const LowerSet sel = top_terms(rho, 6);
    const ShiftedCoeffs shifted = shifted_coeffs(model, y, sel);
    for (std::size_t i = 0; i < sel.size(); ++i) {
        const MultiIndex& nu = sel.members()[i];
        double weight = 1.0;
        for (const auto& [dim, e] : nu.entries())
            for (std::uint32_t k = 0; k < e; ++k) weight *= rho.values()[dim - 1] - std::abs(y[dim - 1]);
        REQUIRE(mapped.find(nu) != nullptr);
        const double got = (*mapped.find(nu))[0];
        const double want = weight * shifted.coeffs[i].second[0];
        CHECK(got == doctest::Approx(want).epsilon(1e-6));
    }
}

TEST_CASE("recentering input validation") {
    const WeightSequence rho = WeightSequence::from_list({2.0});
    WeightedCoeffSeq v(1);
    v.set(MultiIndex{}, {1.0});
    CHECK_THROWS_AS(recenter_coeffs(rho, std::vector<double>{1.5}, v), std::invalid_argument);
    WeightedCoeffSeq big(1);
    for (std::uint32_t k = 0; k <= 30; ++k) big.set(mi({k}), {1.0});
    CHECK_THROWS_AS(recenter_coeffs(rho, std::vector<double>{0.5}, big, 10), std::invalid_argument);
    const TaylorModel model = TaylorModel::separable_rational(rho);
    CHECK_THROWS_AS(shifted_coeffs(model, std::vector<double>{1.0}, top_terms(rho, 1)),
                    std::invalid_argument);
}
