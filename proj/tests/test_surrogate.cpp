#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <limits>
#include <vector>

#include "anisolib/surrogate.hpp"
#include "anisolib/sampling.hpp"

using namespace anisolib;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
MultiIndex mi(std::vector<std::uint32_t> exps) { return MultiIndex::from_dense(exps); }

TaylorModel fixture_model() {
    return TaylorModel::scaled_separable(WeightSequence::from_list({2.0, 4.0}), 0.5);
}

double fixture_eps() {
    // half the whole-cube bound at m=2 (frozen from the prototype run)
    return 1.960516286937094;
}

} // namespace

TEST_CASE("single-cell gate produces a one-entry library with origin coefficients") {
    const TaylorModel model = fixture_model();
    const auto prof = ExponentProfile::create(1.0, 1.0);
    const SurrogateLibrary lib = build_library(model, prof, 10.0, 3);
    CHECK(lib.gate().single_cell);
    CHECK(lib.grid().single_cell);
    REQUIRE(lib.locals().size() == 1);
    const LocalSurrogate& local = lib.locals().front();
    CHECK(local.cell.center == std::vector<double>{0.0, 0.0});
    CHECK(local.cell.halfwidth == std::vector<double>{1.0, 1.0});
    // index selection from the whole-cube kappa weights, coefficients at 0
    const WeightSequence kappa = theta_weights(model.rho(), prof);
    const LowerSet expected = top_terms(kappa, 4);
    REQUIRE(local.index_set.size() == expected.size());
    for (std::size_t i = 0; i < expected.size(); ++i) {
        CHECK(local.index_set.members()[i] == expected.members()[i]);
        CHECK(local.coeffs[i][0] ==
              doctest::Approx(model.coeff(expected.members()[i])[0]).epsilon(1e-14));
    }
}

TEST_CASE("m=0 libraries are piecewise constant at the cell centers") {
    const TaylorModel model = fixture_model();
    const auto prof = ExponentProfile::create(1.0, 1.0);
    const SurrogateLibrary lib = build_library(model, prof, 0.9, 0);
    REQUIRE_FALSE(lib.gate().single_cell);
    for (const auto& local : lib.locals()) {
        CHECK(local.index_set.size() == 1);
        CHECK(local.index_set.members()[0].is_zero());
    }
    for (std::uint64_t t = 0; t < 50; ++t) {
        std::vector<double> y(2);
        for (std::uint32_t j = 0; j < 2; ++j) y[j] = 2.0 * uniform01(mix_keys(41, t, j, 0)) - 1.0;
        const auto got = lib.query(y);
        const auto& cell = lib.locals()[lib.grid().locate_cell(y)].cell;
        CHECK(got[0] == doctest::Approx(model.evaluate(cell.center)[0]).epsilon(1e-14));
    }
}

TEST_CASE("fixture library matches the partition regression") {
    const TaylorModel model = fixture_model();
    const auto prof = ExponentProfile::create(1.0, 1.0);
    const SurrogateLibrary lib = build_library(model, prof, fixture_eps(), 2);
    REQUIRE_FALSE(lib.gate().single_cell);
    CHECK(lib.grid().J == 2);
    CHECK(lib.grid().cell_count == 45.0);
    CHECK(lib.locals().size() == 45);
    CHECK(lib.model_kappa1_norm() == doctest::Approx(4.0).epsilon(1e-13));
    for (const auto& local : lib.locals()) CHECK(local.index_set.size() == 3);
}

TEST_CASE("query evaluates the local truncated expansion") {
    SUBCASE("worked example: d=1, center 0.5, two terms, y=0.6") {
        LocalSurrogate local;
        local.cell = Cell{{0.5}, {0.25}};
        local.index_set = LowerSet::from_members({mi({0}), mi({1})});
        local.coeffs = {{4.0 / 3.0}, {8.0 / 9.0}};
        const double got = local.evaluate(std::vector<double>{0.6})[0];
        CHECK(got == doctest::Approx(4.0 / 3.0 + 8.0 / 9.0 * 0.1).epsilon(1e-14));
        // exact value 1/(1-0.3) for reference
        CHECK(std::abs(got - 1.0 / 0.7) < 0.01);
    }
    SUBCASE("query at a cell center returns the affine offset") {
        const TaylorModel model = fixture_model();
        const auto prof = ExponentProfile::create(1.0, 1.0);
        const SurrogateLibrary lib = build_library(model, prof, fixture_eps(), 2);
        for (std::size_t ci = 0; ci < lib.locals().size(); ci += 7) {
            const auto& local = lib.locals()[ci];
            const auto got = lib.query(local.cell.center);
            CHECK(got[0] == doctest::Approx(local.affine_offset()[0]).epsilon(1e-14));
        }
    }
    SUBCASE("points outside the cube are rejected") {
        const TaylorModel model = fixture_model();
        const auto prof = ExponentProfile::create(1.0, 1.0);
        const SurrogateLibrary lib = build_library(model, prof, 10.0, 0);
        CHECK_THROWS_AS(lib.query(std::vector<double>{1.5, 0.0}), std::invalid_argument);
        CHECK_THROWS_AS(lib.query(std::vector<double>{0.0}), std::invalid_argument);
    }
}

TEST_CASE("certification dominates and passes on the fixture") {
    const TaylorModel model = fixture_model();
    const auto prof = ExponentProfile::create(1.0, 1.0);
    const SurrogateLibrary lib = build_library(model, prof, fixture_eps(), 2);
    const CertificationReport report = certify(lib, model, 2000, 7);
    CHECK(report.pass);
    CHECK(report.max_measured <= report.epsilon);
    REQUIRE(report.cells.size() == 45);
    for (const auto& cert : report.cells) {
        CHECK(cert.measured_sup <= cert.bound_v2 * (1.0 + 1e-12));
        CHECK(cert.ratio <= 1.0 + 1e-12);
    }
    CHECK(report.ratio_max <= 1.0 + 1e-12);
    CHECK(report.ratio_min >= 0.0);
}

TEST_CASE("polynomial models inside every index set are reproduced exactly") {
    const TaylorModel poly = TaylorModel::finite_polynomial(
        WeightSequence::from_list({2.0, 4.0}),
        {{mi({0, 0}), {1.0}}, {mi({1, 0}), {0.5}}, {mi({0, 1}), {0.25}}});
    const auto prof = ExponentProfile::create(1.0, 1.0);
    const SurrogateLibrary lib = build_library(poly, prof, 0.5, 5);
    REQUIRE_FALSE(lib.gate().single_cell);
    for (const auto& local : lib.locals()) {
        CHECK(local.index_set.contains(mi({1, 0})));
        CHECK(local.index_set.contains(mi({0, 1})));
    }
    const CertificationReport report = certify(lib, poly, 100, 3);
    CHECK(report.max_measured <= 1e-12);
}

TEST_CASE("refinement monotonicity of certified errors") {
    const TaylorModel model = fixture_model();
    const auto prof = ExponentProfile::create(1.0, 1.0);
    double eps = fixture_eps();
    double prev = kInf;
    for (int level = 0; level < 3; ++level) {
        const SurrogateLibrary lib = build_library(model, prof, eps, 2);
        const CertificationReport report = certify(lib, model, 500, 11);
        CHECK(report.pass);
        CHECK(report.max_measured <= prev * (1.0 + 1e-12));
        prev = report.max_measured;
        eps /= 2.0;
    }
}

TEST_CASE("build validation") {
    SUBCASE("divergent declared class norm is refused") {
        const TaylorModel sep =
            TaylorModel::separable_rational(WeightSequence::from_list({2.0, 4.0}));
        CHECK_THROWS_AS(build_library(sep, ExponentProfile::create(1.0, 1.0), 0.5, 2),
                        std::invalid_argument);
    }
    SUBCASE("cell budget is enforced") {
        BuildOptions options;
        options.cell_budget = 10;
        CHECK_THROWS_AS(
            build_library(fixture_model(), ExponentProfile::create(1.0, 1.0), fixture_eps(), 2, options),
            std::invalid_argument);
    }
    SUBCASE("separable-rational at p=inf builds fine") {
        const TaylorModel sep =
            TaylorModel::separable_rational(WeightSequence::from_list({2.0, 4.0}));
        const auto prof = ExponentProfile::create(kInf, 0.5);
        const SurrogateLibrary lib = build_library(sep, prof, 0.4, 2);
        const CertificationReport report = certify(lib, sep, 500, 5);
        CHECK(report.pass);
    }
}

TEST_CASE("vector-valued models flow through build, query and certify") {
    const TaylorModel model = TaylorModel::scaled_separable(
        WeightSequence::from_list({2.0, 4.0}), 0.5, std::vector<double>{0.6, -0.8});
    const auto prof = ExponentProfile::create(1.5, 2.0); // q > 1: v2-only territory
    const SurrogateLibrary lib = build_library(model, prof, 0.35, 2);
    const CertificationReport report = certify(lib, model, 400, 13);
    CHECK(report.pass);
    const auto value = lib.query(std::vector<double>{0.3, -0.3});
    REQUIRE(value.size() == 2);
    const auto exact = model.evaluate(std::vector<double>{0.3, -0.3});
    CHECK(std::abs(value[0] - exact[0]) < 0.35);
    CHECK(std::abs(value[1] - exact[1]) < 0.35);
}
