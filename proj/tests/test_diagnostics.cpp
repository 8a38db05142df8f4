#include "robustdens/diagnostics.hpp"
#include "robustdens/error.hpp"
#include "robustdens/search1d.hpp"
#include "robustdens/searchmd.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace robustdens;

TEST(Diagnostics, HarmonicMean)
{
    EXPECT_DOUBLE_EQ(harmonic_mean_alpha({2.0}), 2.0);
    EXPECT_DOUBLE_EQ(harmonic_mean_alpha({1.0, 2.0}), 4.0 / 3.0);
    EXPECT_THROW(harmonic_mean_alpha({}), Error);
    EXPECT_THROW(harmonic_mean_alpha({1.0, 0.0}), Error);
}

TEST(Diagnostics, DimensionByHand)
{
    RegularityConstants k{{1.0, 2.0}, {0.5, 0.01}, {5.0, 6.25}};
    // abar = 4/3, d/abar = 1.5
    double s = std::log(1.0 + 1.5 * 10.0 / 0.5) + std::log(1.0 + std::sqrt(1.5 * 625.0) / 0.5);
    EXPECT_NEAR(dimension_df(k, {0.5, 0.5}), s, 1e-12);
    // small ratios fall back to d
    RegularityConstants flat{{1.0, 1.0, 1.0}, {1.0, 1.0, 1.0}, {1.0, 1.0, 1.0}};
    EXPECT_DOUBLE_EQ(dimension_df(flat, {100.0, 100.0, 100.0}), 3.0);
    EXPECT_NEAR(dimension_df_1d(2.0, 0.1, 0.4, 1.0, 2.0), std::log(1.0 + 2.0), 1e-12);
}

TEST(Diagnostics, TheoryModeRequired)
{
    ModelPtr m = catalog_lookup("gauss-2d");
    try {
        compute_theory_bundle(*m, {1.0, 0.0}, 0.05, {1e-5, 1e-5});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::theory_mode_required);
    }
}

TEST(Diagnostics, BundleMatchesBounds)
{
    ModelPtr g = catalog_lookup("gauss-loc");
    double kappa = kappa_bar() / 2.0;
    TheoryBundle b = compute_theory_bundle(*g, {1.0}, kappa, {2e-6});
    EXPECT_DOUBLE_EQ(b.alpha_bar, 2.0);
    EXPECT_DOUBLE_EQ(b.bound_1d, test_count_bound_1d(*g, kappa, 2e-6));
    EXPECT_DOUBLE_EQ(b.bound_md, test_count_bound_md(*g, kappa, {2e-6}));
    EXPECT_GE(b.d_f, 1.0);

    ModelPtr g2 = catalog_lookup("gauss-2d");
    TheoryBundle b2 = compute_theory_bundle(*g2, {1.0, 1.0}, 0.07, {1e-5, 1e-5});
    EXPECT_TRUE(std::isnan(b2.bound_1d));
    EXPECT_GE(b2.d_f, 2.0);
}

TEST(Diagnostics, OneDimensionalBoundByHand)
{
    ModelPtr g = catalog_lookup("gauss-loc");
    const auto& c = g->constants();
    double kappa = 0.04;
    double ratio = std::sqrt(c.r_upper[0] / (kappa * c.r_lower[0]));
    double expect = 1.0 + std::max(ratio, 1.0 / std::log(2.0)) * std::log(200.0 / 1e-6);
    EXPECT_NEAR(test_count_bound_1d(*g, kappa, 1e-6), expect, 1e-9 * expect);
}
