#include "robustdens/error.hpp"
#include "robustdens/simlab.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <sstream>

using namespace robustdens;

namespace {

// h2 between (1-p)U[0,1] + pU[0,2] and U[0,theta], from the affinity integral
double mixture_h2_direct(double p, double theta)
{
    double lo = std::sqrt(1.0 - p / 2.0), hi = std::sqrt(p / 2.0);
    double aff;
    if (theta <= 1.0)
        aff = std::sqrt(theta) * lo;
    else if (theta <= 2.0)
        aff = (lo + (theta - 1.0) * hi) / std::sqrt(theta);
    else
        aff = (lo + hi) / std::sqrt(theta);
    return 1.0 - aff;
}

// grid search then golden section on the unif-scale range [0.01, 10]
double mixture_h2_oracle(double p)
{
    const int N = 20000;
    double best = 1e300, arg = 0.0;
    for (int i = 0; i <= N; ++i) {
        double th = 0.01 + (10.0 - 0.01) * i / N;
        double v = mixture_h2_direct(p, th);
        if (v < best) {
            best = v;
            arg = th;
        }
    }
    double step = 10.0 / N;
    double a = std::max(0.01, arg - 2 * step), b = std::min(10.0, arg + 2 * step);
    const double g = (std::sqrt(5.0) - 1.0) / 2.0;
    for (int it = 0; it < 200; ++it) {
        double c = b - g * (b - a), d = a + g * (b - a);
        if (mixture_h2_direct(p, c) < mixture_h2_direct(p, d))
            b = d;
        else
            a = c;
    }
    return std::min(best, mixture_h2_direct(p, 0.5 * (a + b)));
}

Scenario small(const std::string& name, std::size_t reps)
{
    Scenario s = make_scenario(name);
    s.n_list = {30};
    s.replications = reps;
    return s;
}

}  // namespace

TEST(Simlab, EmpiricalQuantile)
{
    std::vector<double> v{5, 1, 4, 2, 3};
    EXPECT_EQ(empirical_quantile(v, 0.2), 1.0);
    EXPECT_EQ(empirical_quantile(v, 0.21), 2.0);
    EXPECT_EQ(empirical_quantile(v, 0.99), 5.0);
    EXPECT_EQ(empirical_quantile(v, 1.0), 5.0);
}

TEST(Simlab, MeanStd)
{
    auto [m, s] = mean_std({1.0, 2.0, 3.0, 4.0});
    EXPECT_DOUBLE_EQ(m, 2.5);
    EXPECT_NEAR(s, std::sqrt(5.0 / 3.0), 1e-15);
}

TEST(Simlab, MixtureClosedFormMatchesOracle)
{
    for (int i = 0; i <= 20; ++i) {
        double p = i / 20.0;
        EXPECT_NEAR(mixture_hellinger_to_model(p), mixture_h2_oracle(p), 1e-4) << "p=" << p;
    }
    EXPECT_EQ(mixture_hellinger_to_model(0.0), 0.0);
    EXPECT_THROW(mixture_hellinger_to_model(1.5), Error);
}

TEST(Simlab, TruthHellingerClosedMatchesQuadrature)
{
    ModelPtr u = catalog_lookup("unif-scale");
    for (double p : {0.1, 0.5, 0.9}) {
        Truth t{TruthKind::uniform_mixture, {}, p};
        ExternalDensity s = truth_density(t, 100);
        for (double th : {0.5, 1.0, 1.5, 2.5})
            EXPECT_NEAR(truth_h2(*u, t, 100, Point{th}), hellinger_sq_external(s, *u, Point{th}), 1e-8);
    }
    Truth c{TruthKind::uniform_contaminated, {}, 0.0};
    ExternalDensity s = truth_density(c, 50);
    for (double th : {0.05, 0.1, 0.5, 1.0, 3.0})
        EXPECT_NEAR(truth_h2(*u, c, 50, Point{th}), hellinger_sq_external(s, *u, Point{th}), 1e-8);
}

TEST(Simlab, ContaminatedSampleSupport)
{
    ModelPtr u = catalog_lookup("unif-scale");
    Truth c{TruthKind::uniform_contaminated, {}, 0.0};
    std::size_t outliers = 0, total = 0;
    for (std::uint64_t seed = 1; seed <= 200; ++seed) {
        for (double x : draw_truth(*u, c, 50, seed).values) {
            ASSERT_TRUE((x >= 0.0 && x <= 0.1) || (x >= 0.9 && x <= 1.0));
            outliers += x >= 0.9;
            ++total;
        }
    }
    EXPECT_NEAR(static_cast<double>(outliers) / total, 2.0 / 50.0, 0.01);
}

TEST(Simlab, GaussianMixtureReference)
{
    EXPECT_LT(gaussian_mixture_h2_to_model(0.0), 1e-8);
    double a = gaussian_mixture_h2_to_model(0.5);
    EXPECT_GT(a, 0.1);
    EXPECT_NEAR(gaussian_mixture_h2_to_model(0.3), gaussian_mixture_h2_to_model(0.7), 1e-6);
}

TEST(Simlab, ReproducibleAcrossThreadCounts)
{
    Scenario a = small("table4-ex1", 12);
    a.threads = 1;
    Scenario b = a;
    b.threads = 3;
    SimulationReport ra = run_risk_study(a), rb = run_risk_study(b);
    ASSERT_EQ(ra.rows.size(), rb.rows.size());
    for (std::size_t i = 0; i < ra.rows.size(); ++i) {
        EXPECT_EQ(ra.rows[i].h2_values, rb.rows[i].h2_values);
        double ta = ra.rows[i].tests_mean, tb = rb.rows[i].tests_mean;
        EXPECT_TRUE(ta == tb || (std::isnan(ta) && std::isnan(tb)));
    }
    std::ostringstream ca, cb;
    write_report_csv(ca, ra);
    write_report_csv(cb, rb);
    EXPECT_EQ(ca.str(), cb.str());
}

TEST(Simlab, ReportCsvLayout)
{
    SimulationReport r = run_risk_study(small("table4-ex2", 5));
    std::ostringstream os;
    write_report_csv(os, r);
    std::string s = os.str();
    EXPECT_EQ(s.rfind("scenario,estimator,n,reps,risk,std,rel_risk,q099,q0999,q1,tests_mean,tests_std,test_bound,"
                      "failures\n",
                      0),
              0u);
    EXPECT_NE(s.find("table4-ex2,ours,30,5,"), std::string::npos);
    EXPECT_NE(s.find("NA"), std::string::npos);
    EXPECT_EQ(r.rows[0].failures, 0u);
    EXPECT_FALSE(format_summary(r).empty());
}

TEST(Simlab, AllScenariosConstruct)
{
    for (const auto& n : scenario_names()) {
        Scenario s = make_scenario(n);
        EXPECT_EQ(s.name, n);
        EXPECT_FALSE(s.estimators.empty());
        EXPECT_EQ(s.estimators.front(), "ours");
    }
    EXPECT_THROW(make_scenario("nope"), Error);
}

TEST(Simlab, ContaminationSeparatesEstimators)
{
    SimulationReport r = run_uniform_contamination({100}, 40, 1);
    double ours = NAN, mle = NAN;
    for (const auto& row : r.rows) {
        if (row.estimator == "ours")
            ours = row.risk;
        if (row.estimator == "mle")
            mle = row.risk;
    }
    EXPECT_LT(ours, 0.05);
    EXPECT_GT(mle, 0.3);
}

TEST(Simlab, MixtureSweepRows)
{
    auto rows = run_mixture_sweep(MixtureKind::uniform_1d, {0.0, 0.5}, 50, 5, 1, 1);
    ASSERT_EQ(rows.size(), 2u);
    EXPECT_EQ(rows[0].p, 0.0);
    EXPECT_NEAR(rows[1].h2_model, mixture_hellinger_to_model(0.5), 1e-15);
    std::ostringstream os;
    write_sweep_csv(os, rows);
    EXPECT_EQ(os.str().rfind("p,risk_ours,risk_mle,h2_model\n", 0), 0u);
}

TEST(Simlab, AgreementStudy)
{
    Scenario s = small("table4-ex2", 20);
    QuantileTable q = run_agreement_study(s);
    EXPECT_LE(q.q099, q.q0999);
    EXPECT_LE(q.q0999, q.q1);
    EXPECT_LT(q.q1, 1e-4);
}
