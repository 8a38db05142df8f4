#include "common.hpp"
#include "robustdens/distance.hpp"
#include "robustdens/models.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

using namespace robustdens;
using testutil::near_theta;
using testutil::random_theta;

namespace {

double h2(const char* name, Point a, Point b)
{
    return hellinger_sq(*catalog_lookup(name), a, b);
}

}  // namespace

// values worked out by hand from the affinity integrals
TEST(Hellinger, HandComputedValues)
{
    EXPECT_NEAR(h2("unif-scale", {1.0}, {4.0}), 0.5, 1e-15);
    EXPECT_NEAR(h2("exp-rate", {1.0}, {4.0}), 0.2, 1e-15);
    EXPECT_NEAR(h2("rayleigh", {1.0}, {2.0}), 0.2, 1e-15);
    EXPECT_NEAR(h2("unif-loc", {0.0}, {0.25}), 0.25, 1e-15);
    EXPECT_NEAR(h2("gauss-loc", {0.0}, {2.0}), 1.0 - std::exp(-0.5), 1e-15);
    EXPECT_NEAR(h2("gauss-2d", {0.0, 1.0}, {0.0, 2.0}), 1.0 - std::sqrt(0.8), 1e-15);
    EXPECT_NEAR(h2("shiftexp-2d", {0.0, 1.0}, {0.5, 1.0}), 1.0 - std::exp(-0.25), 1e-15);
    EXPECT_NEAR(h2("unif-locscale-2d", {0.0, 1.0}, {0.0, 0.25}), 0.5, 1e-15);
    // disjoint supports
    EXPECT_NEAR(h2("unif-loc", {0.0}, {3.0}), 1.0, 1e-15);
}

TEST(Hellinger, ClosedAffinityLookup)
{
    EXPECT_NEAR(*hellinger_affinity_closed("exp-rate", Point{1.0}, Point{4.0}), 0.2, 1e-15);
    EXPECT_FALSE(hellinger_affinity_closed("cauchy-loc", Point{0.0}, Point{1.0}).has_value());
}

TEST(Hellinger, ExternalMatchesModel)
{
    ModelPtr m = catalog_lookup("gamma-2d");
    Point a{2.0, 3.0}, b{2.5, 2.0};
    ExternalDensity s{m->bind_density(a), 0.0, INFINITY, m->breakpoints(a), {}};
    EXPECT_NEAR(hellinger_sq_external(s, *m, b), hellinger_sq(*m, a, b), 1e-9);
}

class DistanceModel : public ::testing::TestWithParam<std::string> {};

TEST_P(DistanceModel, ClosedFormAgreesWithQuadrature)
{
    ModelPtr m = catalog_lookup(GetParam());
    Rng rng(21);
    Point c = m->theta_rect().center();
    if (!m->closed_hellinger(c, c))
        GTEST_SKIP() << "no closed form";
    for (int k = 0; k < 40; ++k) {
        Point a = random_theta(*m, rng);
        Point b = k % 2 ? random_theta(*m, rng) : near_theta(*m, a, 0.01, rng);
        double closed = *m->closed_hellinger(a, b);
        double quad = hellinger_sq_quadrature(*m, a, b);
        EXPECT_NEAR(closed, quad, 1e-7) << m->name();
    }
}

TEST_P(DistanceModel, MetricProperties)
{
    ModelPtr m = catalog_lookup(GetParam());
    Rng rng(22);
    for (int k = 0; k < 20; ++k) {
        Point a = random_theta(*m, rng), b = random_theta(*m, rng), c = random_theta(*m, rng);
        double ab = hellinger_sq(*m, a, b), ba = hellinger_sq(*m, b, a);
        EXPECT_NEAR(ab, ba, 1e-12);
        EXPECT_GE(ab, 0.0);
        EXPECT_LE(ab, 1.0);
        EXPECT_EQ(hellinger_sq(*m, a, a), 0.0);
        double tri = std::sqrt(hellinger_sq(*m, a, c)) + std::sqrt(hellinger_sq(*m, c, b));
        EXPECT_LE(std::sqrt(ab), tri + 1e-7);
    }
}

INSTANTIATE_TEST_SUITE_P(All, DistanceModel, ::testing::ValuesIn(catalog_names()),
                         [](const auto& info) {
                             std::string s = info.param;
                             std::replace(s.begin(), s.end(), '-', '_');
                             return s;
                         });
