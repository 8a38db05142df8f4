#include "common.hpp"
#include "robustdens/distance.hpp"
#include "robustdens/quadrature.hpp"
#include "robustdens/testing.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

using namespace robustdens;
using testutil::near_theta;
using testutil::random_theta;

namespace {

// statistic written out directly from its definition; integral by composite Simpson
double oracle_statistic(const ParametricModel& m, const Point& a, const Point& b, const std::vector<double>& xs,
                        double lo, double hi)
{
    double emp = 0.0;
    for (double x : xs) {
        double g = m.density(a, x), gp = m.density(b, x);
        if (g + gp > 0.0)
            emp += (std::sqrt(gp) - std::sqrt(g)) / std::sqrt(g + gp);
    }
    emp /= static_cast<double>(xs.size());
    const int N = 400000;
    const double h = (hi - lo) / N;
    double s = 0.0;
    for (int i = 0; i <= N; ++i) {
        double x = lo + i * h;
        double g = m.density(a, x), gp = m.density(b, x);
        double v = 0.5 * std::sqrt(g + gp) * (std::sqrt(gp) - std::sqrt(g));
        s += v * (i == 0 || i == N ? 1.0 : (i % 2 ? 4.0 : 2.0));
    }
    return emp + s * h / 3.0;
}

std::string param_name(const ::testing::TestParamInfo<std::string>& info)
{
    std::string s = info.param;
    std::replace(s.begin(), s.end(), '-', '_');
    return s;
}

}  // namespace

TEST(Statistic, MatchesDirectFormulaExpRate)
{
    ModelPtr m = catalog_lookup("exp-rate");
    Point a{1.3}, b{2.1};
    auto xs = draw_sample(*m, Point{1.7}, 60, 3).values;
    EXPECT_NEAR(baraud_statistic(*m, a, b, xs), oracle_statistic(*m, a, b, xs, 0.0, 40.0), 1e-9);
}

TEST(Statistic, MatchesDirectFormulaGamma)
{
    ModelPtr m = catalog_lookup("gamma-2d");
    Point a{2.0, 1.5}, b{2.4, 1.9};
    auto xs = draw_sample(*m, Point{2.2, 1.7}, 40, 4).values;
    EXPECT_NEAR(baraud_statistic(*m, a, b, xs), oracle_statistic(*m, a, b, xs, 0.0, 60.0), 1e-8);
}

TEST(Statistic, GaussianLocationIntegralTermVanishes)
{
    ModelPtr m = catalog_lookup("gauss-loc");
    EXPECT_EQ(integral_term(*m, Point{0.3}, Point{1.1}), 0.0);
    auto xs = draw_sample(*m, Point{0.5}, 30, 5).values;
    EXPECT_NEAR(baraud_statistic(*m, Point{0.3}, Point{1.1}, xs),
                oracle_statistic(*m, Point{0.3}, Point{1.1}, xs, -20.0, 20.0), 1e-10);
}

class TestingModel : public ::testing::TestWithParam<std::string> {};

TEST_P(TestingModel, AntisymmetryIsExact)
{
    ModelPtr m = catalog_lookup(GetParam());
    Rng rng(31);
    for (int k = 0; k < 20; ++k) {
        Point a = random_theta(*m, rng), b = near_theta(*m, a, 0.05, rng);
        auto xs = draw_sample(*m, random_theta(*m, rng), 20, 1000 + k).values;
        double tab = baraud_statistic(*m, a, b, xs), tba = baraud_statistic(*m, b, a, xs);
        EXPECT_EQ(tab, -tba);
        EXPECT_EQ(baraud_statistic(*m, a, a, xs), 0.0);
    }
}

TEST_P(TestingModel, IntegralTermMatchesQuadrature)
{
    ModelPtr m = catalog_lookup(GetParam());
    Rng rng(32);
    for (int k = 0; k < 5; ++k) {
        Point a = random_theta(*m, rng), b = near_theta(*m, a, 0.1, rng);
        double fast = integral_term(*m, a, b);
        Support sa = m->support(a), sb = m->support(b);
        std::vector<double> cuts{sa.lo, sa.hi, sb.lo, sb.hi};
        for (const Point* p : {&a, &b})
            for (double v : m->breakpoints(*p))
                cuts.push_back(v);
        std::vector<double> sing = m->singular_points(a);
        for (double v : m->singular_points(b))
            sing.push_back(v);
        cuts.insert(cuts.end(), sing.begin(), sing.end());
        auto f = [&](double x) {
            double g = m->density(a, x), gp = m->density(b, x);
            return 0.5 * std::sqrt(g + gp) * (std::sqrt(gp) - std::sqrt(g));
        };
        double slow = integrate(f, std::min(sa.lo, sb.lo), std::max(sa.hi, sb.hi), cuts, sing, {}).value;
        EXPECT_NEAR(fast, slow, 1e-8) << m->name();
    }
}

// With data from f_a, the mean of T(a, b) lies in
// [-(1 + 1/sqrt2) h2(a,b), -(1 - 1/sqrt2) h2(a,b)].
TEST_P(TestingModel, ExpectationBracketsHellinger)
{
    ModelPtr m = catalog_lookup(GetParam());
    Rng rng(33);
    for (int k = 0; k < 5; ++k) {
        Point a = random_theta(*m, rng), b = near_theta(*m, a, 0.05, rng);
        double h2 = hellinger_sq(*m, a, b);
        if (h2 < 1e-6)
            continue;
        Support sa = m->support(a);
        std::vector<double> cuts = m->breakpoints(a), sing = m->singular_points(a);
        for (double v : m->breakpoints(b))
            cuts.push_back(v);
        Support sb = m->support(b);
        cuts.push_back(sb.lo);
        cuts.push_back(sb.hi);
        for (double v : m->singular_points(b))
            sing.push_back(v);
        cuts.insert(cuts.end(), sing.begin(), sing.end());
        auto f = [&](double x) {
            double g = m->density(a, x), gp = m->density(b, x);
            return g + gp > 0.0 ? g * (std::sqrt(gp) - std::sqrt(g)) / std::sqrt(g + gp) : 0.0;
        };
        double mean = integrate(f, sa.lo, sa.hi, cuts, sing, {}).value + integral_term(*m, a, b);
        const double r = 1.0 / std::sqrt(2.0);
        EXPECT_LE(mean, -(1.0 - r) * h2 + 1e-8) << m->name();
        EXPECT_GE(mean, -(1.0 + r) * h2 - 1e-8) << m->name();
    }
}

TEST_P(TestingModel, ProjectionLandsOnGrid)
{
    ModelPtr m = catalog_lookup(GetParam());
    Point t(m->dim(), 0.5);
    GridSpec g = make_grid(*m, t, 100);
    const auto& c = m->constants();
    Rng rng(34);
    for (std::size_t j = 0; j < m->dim(); ++j)
        EXPECT_NEAR(g.epsilon[j], 0.5 * std::pow(c.r_upper[j] * 100.0, -1.0 / c.alpha[j]), 1e-15);
    for (int k = 0; k < 50; ++k) {
        Point x = random_theta(*m, rng);
        Point p = project_to_grid(x, g);
        EXPECT_EQ(project_to_grid(p, g), p);
        for (std::size_t j = 0; j < x.size(); ++j) {
            EXPECT_LE(p[j], x[j]);
            EXPECT_LT(x[j] - p[j], g.epsilon[j] * (1.0 + 1e-9));
        }
    }
    Point x = random_theta(*m, rng);
    EXPECT_EQ(project_to_grid(x, identity_grid(*m)), x);
}

INSTANTIATE_TEST_SUITE_P(All, TestingModel, ::testing::ValuesIn(catalog_names()), param_name);

TEST(Evaluator, CountsAndProjects)
{
    ModelPtr m = catalog_lookup("gauss-loc");
    auto xs = draw_sample(*m, Point{0.0}, 50, 6).values;
    GridSpec g = make_grid(*m, Point{1.0}, xs.size());
    TestEvaluator ev(*m, xs, g, {});
    Point a{0.01234}, b{0.4321};
    double v = ev(a, b);
    TestValue tv = test_T(*m, a, b, xs, g);
    EXPECT_EQ(v, tv.value);
    EXPECT_EQ(tv.f_theta_used, project_to_grid(a, g));
    ev(b, a);
    ev(a, a);
    EXPECT_EQ(ev.count(), 3u);
}

TEST(Evaluator, RejectsEmptySample)
{
    ModelPtr m = catalog_lookup("gauss-loc");
    std::vector<double> none;
    EXPECT_THROW(TestEvaluator(*m, none, identity_grid(*m), {}), std::exception);
}
