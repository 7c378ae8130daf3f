#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "ipdsaw/area_dp.hpp"
#include "ipdsaw/law.hpp"
#include "ipdsaw/spectral.hpp"
#include "ipdsaw/util.hpp"

using namespace ipdsaw;

TEST_CASE("h at zero discount is exactly zero") {
    const WalkLaw law(1.0);
    CHECK(h_beta(law, 0.0, 1e-10) == 0.0);
    CHECK_THROWS_AS(h_beta(law, -0.1, 1e-8), std::invalid_argument);
    CHECK_THROWS_AS(h_beta(law, 0.1, 0.0), std::invalid_argument);
}

TEST_CASE("finite-N values: one step, zero discount, truncation monotonicity") {
    const WalkLaw law(1.0);
    CHECK(h_beta_finite(law, 0.3, 1, 64) == doctest::Approx(-std::log(law.c)).epsilon(1e-13));

    // delta = 0 reduces to (1/N) log P(V_N = 0); cross-check via the area DP
    const std::int64_t N = 6;
    const auto table = ReturnTable::build(law, N, 150, {false, 150});
    std::vector<double> terms;
    for (std::int64_t k = 0; k <= 150; ++k) terms.push_back(table.log_prob(N, k));
    const double direct = log_sum_exp(terms) / static_cast<double>(N);
    CHECK(h_beta_finite(law, 0.0, N, 220) == doctest::Approx(direct).epsilon(1e-10));

    double prev = h_beta_finite(law, 0.1, 50, 8);
    for (std::int64_t M : {16, 32, 64, 128}) {
        const double cur = h_beta_finite(law, 0.1, 50, M);
        CHECK(cur >= prev - 1e-15);
        prev = cur;
    }
}

TEST_CASE("superadditivity of the finite-N sequence") {
    const WalkLaw law(1.0);
    const double delta = 0.2;
    const std::int64_t M = 64;
    for (std::int64_t a : {5, 10, 20})
        for (std::int64_t b : {5, 10, 20}) {
            const double ha = static_cast<double>(a) * h_beta_finite(law, delta, a, M);
            const double hb = static_cast<double>(b) * h_beta_finite(law, delta, b, M);
            const double hab = static_cast<double>(a + b) * h_beta_finite(law, delta, a + b, M);
            CHECK(hab >= ha + hb - 1e-12);
        }
}

TEST_CASE("limit dominates every finite-N value") {
    const WalkLaw law(1.0);
    const double delta = 0.1;
    const double h = h_beta(law, delta, 1e-9);
    CHECK(h < 0.0);
    for (std::int64_t N : {10, 20, 40}) CHECK(h >= h_beta_finite(law, delta, N, 256) - 1e-12);
}

TEST_CASE("finite-N consistency at large N") {
    const WalkLaw law(1.0);
    const double h = h_beta(law, 0.1, 1e-9);
    const double hN = h_beta_finite(law, 0.1, 2000, 320);
    CHECK(std::abs(h - hN) < 5e-3);
}

TEST_CASE("monotone nonincreasing and midpoint-convex on a grid at beta_c") {
    const WalkLaw law(beta_critical(Model::uniform));
    std::vector<double> grid, vals;
    for (int i = 0; i <= 20; ++i) grid.push_back(0.05 * i);
    for (double d : grid) vals.push_back(h_beta(law, d, 1e-8));
    CHECK(vals[0] == 0.0);
    for (std::size_t i = 1; i < vals.size(); ++i) {
        CHECK(vals[i] <= vals[i - 1] + 1e-10);
        CHECK(vals[i] < 0.0);
    }
    for (std::size_t i = 1; i + 1 < vals.size(); ++i)
        CHECK(vals[i - 1] + vals[i + 1] - 2.0 * vals[i] >= -1e-7);
}

TEST_CASE("critical scaling scan shape") {
    const WalkLaw law(beta_critical(Model::uniform));
    const auto rows = critical_scaling_scan(law, {0.2, 0.1, 0.05, 0.02}, 1e-8);
    REQUIRE(rows.size() == 4);
    for (const auto& r : rows) {
        CHECK(r.ratio < 0.0);
        CHECK(r.h == doctest::Approx(r.ratio * std::pow(r.delta, 2.0 / 3.0)));
    }
}
