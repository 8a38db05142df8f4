#include "common.hpp"
#include "robustdens/distance.hpp"
#include "robustdens/error.hpp"
#include "robustdens/search1d.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

using namespace robustdens;
using testutil::near_theta;
using testutil::random_theta;

namespace {

std::vector<std::string> one_d_models()
{
    std::vector<std::string> out;
    for (const auto& n : catalog_names())
        if (catalog_lookup(n)->dim() == 1)
            out.push_back(n);
    return out;
}

std::string param_name(const ::testing::TestParamInfo<std::string>& info)
{
    std::string s = info.param;
    std::replace(s.begin(), s.end(), '-', '_');
    return s;
}

}  // namespace

TEST(Search1D, KappaBar)
{
    EXPECT_NEAR(kappa_bar(), 0.08578643762690485, 1e-15);
    double q = std::sqrt((2.0 + std::sqrt(2.0)) / (2.0 - std::sqrt(2.0)));
    EXPECT_NEAR(kappa_bar(), 1.0 / ((1.0 + q) * (1.0 + q)), 1e-15);
}

TEST(Search1D, ConfigDefaultsAndValidation)
{
    ModelPtr m = catalog_lookup("gauss-loc");
    EstimatorConfig1D c = resolve_config_1d(*m, {});
    EXPECT_DOUBLE_EQ(c.kappa, kappa_bar() / 2.0);
    EXPECT_DOUBLE_EQ(c.eta, 200.0 / 1e8);
    EXPECT_EQ(*c.radius_rule, RadiusRule1D::optimal);

    EstimatorConfig1D bad;
    bad.kappa = 0.09;
    try {
        resolve_config_1d(*m, bad);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::invalid_config);
        EXPECT_NE(std::string(e.what()).find("0.0857864"), std::string::npos);
    }
    bad.kappa = -0.01;
    EXPECT_THROW(resolve_config_1d(*m, bad), Error);
    bad = {};
    bad.eta = -1.0;
    EXPECT_THROW(resolve_config_1d(*m, bad), Error);
    EXPECT_THROW(resolve_config_1d(*catalog_lookup("gauss-2d"), {}), Error);
}

TEST(Search1D, OptimalFallsBackWhenUnavailable)
{
    ModelPtr m = catalog_lookup("cauchy-loc");
    RadiusPair1D r = radius_pair_1d(*m, 0.0, 1.0, 0.04, RadiusRule1D::optimal);
    EXPECT_TRUE(r.fallback);
    EstimatorConfig1D c;
    c.radius_rule = RadiusRule1D::optimal;
    auto xs = draw_sample(*m, Point{0.0}, 20, 1).values;
    Estimate e = estimate_1d(*m, xs, c);
    EXPECT_EQ(e.warnings.size(), 1u);
}

TEST(Search1D, IterationCap)
{
    ModelPtr m = catalog_lookup("gauss-loc");
    EstimatorConfig1D c;
    c.max_iterations = 5;
    auto xs = draw_sample(*m, Point{0.0}, 20, 1).values;
    try {
        estimate_1d(*m, xs, c);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::iteration_cap_exceeded);
    }
}

TEST(Search1D, ConsistentForLargeSamples)
{
    ModelPtr m = catalog_lookup("exp-rate");
    auto xs = draw_sample(*m, Point{2.5}, 20000, 8).values;
    Estimate e = estimate_1d(*m, xs, {});
    EXPECT_NEAR(e.theta_hat[0], 2.5, 0.1);
}

TEST(Search1D, Deterministic)
{
    ModelPtr m = catalog_lookup("pareto-shift");
    auto xs = draw_sample(*m, Point{1.0}, 50, 2).values;
    Estimate a = estimate_1d(*m, xs, {}), b = estimate_1d(*m, xs, {});
    EXPECT_EQ(a.theta_hat, b.theta_hat);
    EXPECT_EQ(a.trace.test_count, b.trace.test_count);
}

class Search1DModel : public ::testing::TestWithParam<std::string> {};

// every rule's radii keep theta + r_bar and theta' - r_under inside the kappa-ball
TEST_P(Search1DModel, RadiiStayInsideBall)
{
    ModelPtr m = catalog_lookup(GetParam());
    const auto& rect = m->theta_rect();
    Rng rng(41);
    const double kappa = kappa_bar() / 2.0;
    for (auto rule : {RadiusRule1D::optimal, RadiusRule1D::hellinger_based, RadiusRule1D::parametric}) {
        for (int k = 0; k < 30; ++k) {
            Point a = random_theta(*m, rng);
            Point b = k % 2 ? random_theta(*m, rng) : near_theta(*m, a, 0.001, rng);
            double t = std::min(a[0], b[0]), tp = std::max(a[0], b[0]);
            if (t == tp)
                continue;
            double h2 = hellinger_sq(*m, Point{t}, Point{tp});
            RadiusPair1D r = radius_pair_1d(*m, t, tp, kappa, rule);
            for (double s : {0.25, 0.5, 1.0}) {
                double up = std::min(t + s * r.r_bar, rect.upper[0]);
                double dn = std::max(tp - s * r.r_under, rect.lower[0]);
                EXPECT_LE(hellinger_sq(*m, Point{t}, Point{up}), kappa * h2 * (1.0 + 1e-9) + 1e-12)
                    << to_string(rule) << " t=" << t << " tp=" << tp;
                EXPECT_LE(hellinger_sq(*m, Point{tp}, Point{dn}), kappa * h2 * (1.0 + 1e-9) + 1e-12)
                    << to_string(rule) << " t=" << t << " tp=" << tp;
            }
        }
    }
}

TEST_P(Search1DModel, IntervalsNestAndTerminate)
{
    ModelPtr m = catalog_lookup(GetParam());
    Rng rng(42);
    for (int k = 0; k < 5; ++k) {
        Point th = random_theta(*m, rng);
        auto xs = draw_sample(*m, th, 30, 500 + k).values;
        EstimatorConfig1D c;
        c.keep_trace = true;
        c = resolve_config_1d(*m, c);
        Estimate e = estimate_1d(*m, xs, c);
        const auto& R = e.trace.rects;
        ASSERT_GE(R.size(), 1u);
        EXPECT_EQ(R.front().lower, m->theta_rect().lower);
        for (std::size_t i = 1; i < R.size(); ++i) {
            EXPECT_TRUE(R[i - 1].contains(R[i]));
            EXPECT_LE(R[i].lower[0], R[i].upper[0]);
        }
        EXPECT_LE(e.final_rect.width(0), c.eta);
        EXPECT_DOUBLE_EQ(e.theta_hat[0], e.final_rect.center()[0]);
        EXPECT_EQ(e.trace.test_values.size(), e.trace.test_count);
        EXPECT_LE(static_cast<double>(e.trace.test_count), test_count_bound_1d(*m, c.kappa, c.eta));
    }
}

TEST_P(Search1DModel, DiscretizedRunTerminates)
{
    ModelPtr m = catalog_lookup(GetParam());
    auto xs = draw_sample(*m, m->theta_rect().center(), 30, 7).values;
    EstimatorConfig1D c;
    c.t = 1.0;
    Estimate e = estimate_1d(*m, xs, c);
    EXPECT_TRUE(m->theta_rect().contains(e.theta_hat));
}

INSTANTIATE_TEST_SUITE_P(All, Search1DModel, ::testing::ValuesIn(one_d_models()), param_name);
