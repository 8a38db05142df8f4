#include "robustdens/error.hpp"
#include "robustdens/quadrature.hpp"
#include "robustdens/rng.hpp"
#include "robustdens/special.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace robustdens;

namespace {

// sum_{k<K} 1/(x+k)^2 plus the Euler-Maclaurin tail
double trigamma_series(double x)
{
    const int K = 200000;
    double s = 0.0;
    for (int k = K - 1; k >= 0; --k)
        s += 1.0 / ((x + k) * (x + k));
    double y = x + K;
    return s + 1.0 / y + 0.5 / (y * y) + 1.0 / (6.0 * y * y * y);
}

}  // namespace

TEST(Special, TrigammaKnownValues)
{
    const double pi2 = std::numbers::pi * std::numbers::pi;
    EXPECT_NEAR(trigamma(1.0), pi2 / 6.0, 1e-13);
    EXPECT_NEAR(trigamma(0.5), pi2 / 2.0, 1e-13);
    EXPECT_NEAR(trigamma(2.0), pi2 / 6.0 - 1.0, 1e-13);
}

TEST(Special, TrigammaMatchesSeriesOracle)
{
    for (double x : {0.1, 0.6, 0.7, 1.3, 3.7, 9.99, 10.0, 25.0, 140.0}) {
        double ref = trigamma_series(x);
        EXPECT_NEAR(trigamma(x), ref, 1e-11 * ref) << "x=" << x;
    }
}

TEST(Special, TrigammaRecurrence)
{
    for (double x : {0.2, 0.9, 4.5, 12.0})
        EXPECT_NEAR(trigamma(x) - trigamma(x + 1.0), 1.0 / (x * x), 1e-12 * trigamma(x));
}

TEST(Special, LogGammaAndBeta)
{
    for (double x : {0.3, 1.0, 2.5, 17.0})
        EXPECT_NEAR(log_gamma(x), std::lgamma(x), 1e-13);
    EXPECT_NEAR(log_beta(2.0, 3.0), std::log(1.0 / 12.0), 1e-13);
    EXPECT_NEAR(log_beta(0.5, 0.5), std::log(std::numbers::pi), 1e-13);
}

TEST(Quadrature, HalfLineExponential)
{
    auto r = integrate([](double x) { return std::exp(-x); }, 0.0, INFINITY, {});
    EXPECT_NEAR(r.value, 1.0, 1e-10);
}

TEST(Quadrature, RealLineGaussian)
{
    auto r = integrate([](double x) { return std::exp(-0.5 * (x - 3.0) * (x - 3.0)); }, -INFINITY, INFINITY, {3.0}, {},
                       {});
    EXPECT_NEAR(r.value, std::sqrt(2.0 * std::numbers::pi), 1e-9);
}

TEST(Quadrature, EndpointSingularity)
{
    auto f = [](double x) { return 1.0 / std::sqrt(std::abs(x - 0.3)); };
    auto r = integrate(f, -0.7, 1.3, {0.3}, {0.3}, {});
    EXPECT_NEAR(r.value, 2.0 * (std::sqrt(1.0) + std::sqrt(1.0)), 1e-9);
}

TEST(Quadrature, NonConvergenceThrows)
{
    QuadratureSpec q;
    q.max_subdivisions = 3;
    q.abs_tol = q.rel_tol = 1e-15;
    auto f = [](double x) { return std::sin(200.0 * x) * std::sin(200.0 * x); };
    try {
        integrate(f, 0.0, 10.0, q);
        FAIL() << "expected an error";
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::quadrature_nonconvergence);
    }
}

TEST(Rng, Deterministic)
{
    Rng a(42), b(42), c(43);
    for (int i = 0; i < 10; ++i) {
        auto x = a.next();
        EXPECT_EQ(x, b.next());
        EXPECT_NE(x, c.next());
    }
}

TEST(Rng, Moments)
{
    Rng rng(7);
    const int n = 200000;
    double su = 0, sn = 0, sn2 = 0, sg = 0, sb = 0;
    for (int i = 0; i < n; ++i) {
        double u = rng.uniform();
        ASSERT_GE(u, 0.0);
        ASSERT_LT(u, 1.0);
        su += u;
        double z = rng.normal();
        sn += z;
        sn2 += z * z;
        sg += rng.gamma(0.6);
        sb += rng.beta(2.0, 5.0);
    }
    EXPECT_NEAR(su / n, 0.5, 0.005);
    EXPECT_NEAR(sn / n, 0.0, 0.01);
    EXPECT_NEAR(sn2 / n, 1.0, 0.01);
    EXPECT_NEAR(sg / n, 0.6, 0.01);
    EXPECT_NEAR(sb / n, 2.0 / 7.0, 0.005);
}
