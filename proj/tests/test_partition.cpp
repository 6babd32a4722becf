#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <limits>
#include <vector>

#include "anisolib/bounds.hpp"
#include "anisolib/model.hpp"
#include "anisolib/partition.hpp"
#include "anisolib/sampling.hpp"

using namespace anisolib;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Fixture: scaled-separable c=1/2, d=2, rho=(2,4), p=1, q=1, m=2,
// eps = half the whole-cube bound. Frozen from an independent prototype run.
struct Fixture {
    WeightSequence rho = WeightSequence::from_list({2.0, 4.0});
    ExponentProfile prof = ExponentProfile::create(1.0, 1.0);
    TaylorModel model = TaylorModel::scaled_separable(WeightSequence::from_list({2.0, 4.0}), 0.5);
    std::uint32_t m = 2;
    double class_norm_kappa1 = 4.0; // (1 - 1/2)^{-2}
    double c_total = 0;
    double eps = 0;

    Fixture() {
        c_total = norm_equivalence_constant(rho, prof.q_theta()) * class_norm_kappa1;
        const double global = c_total * lq_norm(rho.inverse_values(), prof.q_theta()) / 3.0;
        eps = global / 2.0;
    }
};

} // namespace

TEST_CASE("feasibility gate") {
    Fixture fx;
    const WeightSequence kappa = theta_weights(fx.rho, fx.prof);
    SUBCASE("eps above the whole-cube bound: single cell") {
        const auto res = feasibility_gate(fx.c_total, fx.prof, kappa, 10.0, fx.m);
        CHECK(res.single_cell);
    }
    SUBCASE("eps a tenth of the bound: partition needed, eta per the formula") {
        const auto res0 = feasibility_gate(fx.c_total, fx.prof, kappa, 1.0, fx.m);
        const double eps = res0.global_kappa_bound / 10.0;
        const auto res = feasibility_gate(fx.c_total, fx.prof, kappa, eps, fx.m);
        CHECK_FALSE(res.single_cell);
        const double expected =
            std::pow(eps * std::pow(3.0, fx.prof.rate()) / fx.c_total, fx.prof.q_theta());
        CHECK(res.eta == doctest::Approx(expected).epsilon(1e-14));
    }
    SUBCASE("large m pushes the bound below eps") {
        const auto res = feasibility_gate(fx.c_total, fx.prof, kappa, 0.05, 4000);
        CHECK(res.single_cell);
    }
    CHECK_THROWS_AS(feasibility_gate(fx.c_total, fx.prof, kappa, 0.0, 0), std::invalid_argument);
}

TEST_CASE("split-dimension count") {
    SUBCASE("power family 2j, q=1, eta/2=0.1, truncated at d=8") {
        const WeightSequence rho = WeightSequence::power_family(2.0, 1.0, 8);
        const auto prof = ExponentProfile::create(1.0, 1.0);
        const SplitDims split = compute_split_dims(rho, prof, 0.2, TailMode::truncated);
        CHECK(split.J == 7); // tail(6)=1/14+1/16 > 0.1, tail(7)=1/16 <= 0.1
        CHECK(split.tail_value == doctest::Approx(0.0625).epsilon(1e-14));
    }
    SUBCASE("zero tail past the truncation keeps J within dims") {
        const WeightSequence rho = WeightSequence::from_list({2.0, 3.0, 4.0});
        const auto prof = ExponentProfile::create(1.0, 1.0);
        const SplitDims split = compute_split_dims(rho, prof, 1e-9);
        CHECK(split.J <= 3);
        CHECK(split.J == 3);
    }
    SUBCASE("huge eta gives the minimum J = 1") {
        const WeightSequence rho = WeightSequence::from_list({2.0, 4.0});
        const auto prof = ExponentProfile::create(1.0, 1.0);
        CHECK(compute_split_dims(rho, prof, 100.0).J == 1);
    }
    SUBCASE("analytic tail can be infeasible even at J = dims") {
        const WeightSequence rho = WeightSequence::power_family(2.0, 1.0, 64);
        const auto prof = ExponentProfile::create(1.0, 2.0);
        CHECK_THROWS_AS(compute_split_dims(rho, prof, 0.001, TailMode::analytic),
                        std::invalid_argument);
    }
    SUBCASE("nondecreasing weights required") {
        const WeightSequence rho = WeightSequence::from_list({4.0, 2.0});
        const auto prof = ExponentProfile::create(1.0, 1.0);
        CHECK_THROWS_AS(compute_split_dims(rho, prof, 1.0), std::invalid_argument);
    }
}

TEST_CASE("ladder construction: worked example") {
    const DirectionLadder lad = build_ladder(1, 2.0, 0.25);
    CHECK(lad.k == 1);
    REQUIRE(lad.breakpoints.size() == 4);
    CHECK(lad.breakpoints[0] == -1.0);
    CHECK(lad.breakpoints[1] == doctest::Approx(-0.5).epsilon(1e-15));
    CHECK(lad.breakpoints[2] == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(lad.breakpoints[3] == 1.0);
    // interval-count bound: 3 <= 4 ln 2 + 2
    CHECK(lad.interval_count() == 3);
    CHECK(3.0 <= 4.0 * std::log(2.0) + 2.0);

    SUBCASE("escape case: sigma kappa >= 1") {
        const DirectionLadder single = build_ladder(1, 2.0, 0.6);
        CHECK(single.k == 0);
        CHECK(single.interval_count() == 1);
        CHECK(single.breakpoints == std::vector<double>{-1.0, 1.0});
    }
    SUBCASE("locate: shared faces resolve to the lower interval") {
        CHECK(lad.locate(-1.0) == 0);
        CHECK(lad.locate(-0.75) == 0);
        CHECK(lad.locate(-0.5) == 0);
        CHECK(lad.locate(0.0) == 1);
        CHECK(lad.locate(0.5) == 1);
        CHECK(lad.locate(0.75) == 2);
        CHECK(lad.locate(1.0) == 2);
    }
}

TEST_CASE("ladder structural invariants across configurations") {
    for (const double kappa : {1.2, 1.6, 2.0, 4.0, 16.0}) {
        for (const double sigma : {0.6, 0.25, 0.1, 0.03, 0.007}) {
            const DirectionLadder lad = build_ladder(1, kappa, sigma);
            const auto& b = lad.breakpoints;
            REQUIRE(b.size() == 2 * lad.k + 2);
            CHECK(b.front() == -1.0);
            CHECK(b.back() == 1.0);
            for (std::size_t i = 0; i + 1 < b.size(); ++i) CHECK(b[i] < b[i + 1]);
            // symmetry is exact: breakpoint negation mirrors the list
            for (std::size_t i = 0; i < b.size(); ++i) CHECK(b[i] == -b[b.size() - 1 - i]);
            // per-interval budget lambda <= sigma (kappa - |center|)
            for (std::uint32_t idx = 0; idx < lad.interval_count(); ++idx) {
                const Interval iv = lad.interval(idx);
                CHECK(iv.halfwidth <= sigma * (kappa - std::abs(iv.center)) + 1e-12);
            }
            // count bound at the conservative constant 2
            if (lad.k > 0)
                CHECK(lad.interval_count() <=
                      std::abs(std::log1p(-1.0 / kappa)) / sigma + 2.0);
        }
    }
}

TEST_CASE("build_partition: products of ladder counts") {
    const auto prof = ExponentProfile::create(1.0, 1.0);
    SUBCASE("single direction, three intervals") {
        const WeightSequence rho = WeightSequence::from_list({2.0});
        const PartitionGrid grid = build_partition(rho, prof, 0.5, 1);
        CHECK(grid.sigma == doctest::Approx(0.25).epsilon(1e-15));
        CHECK(grid.cell_count == 3.0);
    }
    SUBCASE("3 x 5 = 15 cells") {
        const WeightSequence rho = WeightSequence::from_list({1.6, 2.0});
        const PartitionGrid grid = build_partition(rho, prof, 1.0, 2);
        CHECK(grid.sigma == doctest::Approx(0.25).epsilon(1e-15));
        REQUIRE(grid.ladders.size() == 2);
        CHECK(grid.ladders[0].interval_count() == 5);
        CHECK(grid.ladders[1].interval_count() == 3);
        CHECK(grid.cell_count == 15.0);
        CHECK(grid.cell_count_u64() == 15);
    }
}

TEST_CASE("partition fixture regression") {
    Fixture fx;
    const WeightSequence kappa = theta_weights(fx.rho, fx.prof);
    const auto gate = feasibility_gate(fx.c_total, fx.prof, kappa, fx.eps, fx.m);
    REQUIRE_FALSE(gate.single_cell);
    CHECK(gate.eta == doctest::Approx(0.375).epsilon(1e-12));

    const SplitDims split = compute_split_dims(fx.rho, fx.prof, gate.eta);
    CHECK(split.J == 2);

    const PartitionGrid grid = build_partition(fx.rho, fx.prof, gate.eta, split.J);
    CHECK(grid.sigma == doctest::Approx(0.09375).epsilon(1e-12));
    REQUIRE(grid.ladders.size() == 2);
    CHECK(grid.ladders[0].k == 4);
    CHECK(grid.ladders[1].k == 2);
    CHECK(grid.cell_count == 45.0);
    CHECK(grid.bound_on_n == doctest::Approx(47.61233093487417).epsilon(1e-10));
    CHECK(grid.cell_count <= grid.bound_on_n);
    CHECK(grid.log_cell_count == doctest::Approx(std::log(45.0)).epsilon(1e-12));

    SUBCASE("every cell satisfies the kappa-tilde budget") {
        for (std::uint64_t ci = 0; ci < grid.cell_count_u64(); ++ci) {
            const Cell cell = grid.cell_at(ci, 2);
            validate_cell(cell, 2);
            const WeightSequence kt = recentered_weights(kappa, cell.center, cell.halfwidth);
            double sum = 0.0;
            for (double v : kt.values()) sum += std::pow(v, -fx.prof.q_theta());
            CHECK(sum <= gate.eta / 2.0 + grid.tail_value + 1e-12);
            CHECK(sum <= gate.eta + 1e-12);
        }
    }
    SUBCASE("cell lookup is the inverse of cell enumeration") {
        for (std::uint64_t ci = 0; ci < grid.cell_count_u64(); ++ci) {
            const Cell cell = grid.cell_at(ci, 2);
            CHECK(grid.locate_cell(cell.center) == ci);
        }
        // random points land in a cell that contains them
        for (std::uint64_t t = 0; t < 200; ++t) {
            std::vector<double> y(2);
            for (std::uint32_t j = 0; j < 2; ++j)
                y[j] = 2.0 * uniform01(mix_keys(31, t, j, 0)) - 1.0;
            const Cell cell = grid.cell_at(grid.locate_cell(y), 2);
            for (std::uint32_t j = 0; j < 2; ++j)
                CHECK(std::abs(y[j] - cell.center[j]) <= cell.halfwidth[j] + 1e-15);
        }
    }
}

TEST_CASE("monotone refinement: halving eps never coarsens") {
    Fixture fx;
    const WeightSequence kappa = theta_weights(fx.rho, fx.prof);
    double eps = fx.eps;
    double prev_n = 0.0;
    std::vector<std::uint32_t> prev_k;
    for (int level = 0; level < 5; ++level) {
        const auto gate = feasibility_gate(fx.c_total, fx.prof, kappa, eps, fx.m);
        REQUIRE_FALSE(gate.single_cell);
        const SplitDims split = compute_split_dims(fx.rho, fx.prof, gate.eta);
        const PartitionGrid grid = build_partition(fx.rho, fx.prof, gate.eta, split.J);
        CHECK(grid.cell_count >= prev_n);
        std::vector<std::uint32_t> k;
        for (const auto& lad : grid.ladders) k.push_back(lad.k);
        for (std::size_t j = 0; j < prev_k.size() && j < k.size(); ++j) CHECK(k[j] >= prev_k[j]);
        prev_n = grid.cell_count;
        prev_k = k;
        eps /= 2.0;
    }
}

TEST_CASE("partition input validation") {
    const WeightSequence rho = WeightSequence::from_list({2.0, 4.0});
    const auto prof = ExponentProfile::create(1.0, 1.0);
    CHECK_THROWS_AS(build_partition(rho, prof, 0.0, 1), std::invalid_argument);
    CHECK_THROWS_AS(build_partition(rho, prof, 0.5, 0), std::invalid_argument);
    CHECK_THROWS_AS(build_partition(rho, prof, 0.5, 3), std::invalid_argument);
    CHECK_THROWS_AS(build_ladder(1, 0.9, 0.25), std::invalid_argument);
    CHECK_THROWS_AS(build_ladder(1, 2.0, 0.0), std::invalid_argument);
    Cell bad;
    bad.center = {0.8};
    bad.halfwidth = {0.4};
    CHECK_THROWS_AS(validate_cell(bad, 1), std::invalid_argument);
}
