#pragma once

#include "robustdens/baselines.hpp"
#include "robustdens/search1d.hpp"
#include "robustdens/searchmd.hpp"
#include "robustdens/truth.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace robustdens {

// Estimator identifiers: "ours" plus the baseline names
// (mle, mle_grid, mspe, median, mean, mvub, midrange).
struct Scenario {
    std::string name;
    ModelPtr model;
    Truth truth;
    std::vector<std::size_t> n_list;
    std::size_t replications = 1000;
    std::uint64_t base_seed = 1;
    std::vector<std::string> estimators{"ours"};
    EstimatorConfig1D config_1d;
    EstimatorConfigMD config_md;
    std::size_t grid_points = 100000;
    unsigned threads = 0;  // 0 = hardware concurrency
};

struct ReportRow {
    std::string scenario;
    std::string estimator;
    std::size_t n = 0;
    std::size_t reps = 0;  // successful replications
    double risk = 0.0;
    double std = 0.0;
    double rel_risk = 0.0;  // R(ours)/R(this) - 1; NaN on the "ours" row
    // quantiles of max_j |ours_j - mle_j|; filled on the "ours" row when an MLE is listed
    double q099 = 0.0;
    double q0999 = 0.0;
    double q1 = 0.0;
    double tests_mean = 0.0;
    double tests_std = 0.0;
    double tests_max = 0.0;
    double test_bound = 0.0;
    std::size_t failures = 0;
    std::vector<double> h2_values;  // per successful replication, in replication order
};

struct SimulationReport {
    std::vector<ReportRow> rows;
};

struct QuantileTable {
    double q099 = 0.0;
    double q0999 = 0.0;
    double q1 = 0.0;
};

// order-statistic quantile: the ceil(cN)-th smallest value
double empirical_quantile(std::vector<double> v, double c);
// mean and N-1 standard deviation
std::pair<double, double> mean_std(const std::vector<double>& v);

SimulationReport run_risk_study(const Scenario& scenario);
// quantiles of max_j |ours_j - mle_j| at the first n of the scenario
QuantileTable run_agreement_study(const Scenario& scenario);
SimulationReport run_uniform_contamination(const std::vector<std::size_t>& n_list, std::size_t reps,
                                           std::uint64_t base_seed, unsigned threads = 0);

// inf_theta H2(s_p, F) for the uniform mixture in closed form
double mixture_hellinger_to_model(double p);

enum class MixtureKind { uniform_1d, gaussian_2d };

struct SweepRow {
    double p = 0.0;
    double risk_ours = 0.0;
    double risk_mle = 0.0;
    double h2_model = 0.0;
    std::size_t failures = 0;
};

std::vector<SweepRow> run_mixture_sweep(MixtureKind kind, const std::vector<double>& p_grid, std::size_t n,
                                        std::size_t reps, std::uint64_t base_seed, unsigned threads = 0);

// model and rectangle used by the Gaussian mixture sweep
ModelPtr mixture_gauss2d_model();
// inf over Theta of h2(s_p, f_theta) by grid refinement
double gaussian_mixture_h2_to_model(double p);

// named scenarios: table4-ex1..8, table6-ex1..6, contam-uniform
const std::vector<std::string>& scenario_names();
Scenario make_scenario(const std::string& name);

void write_report_csv(std::ostream& os, const SimulationReport& report);
void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows);
std::string format_summary(const SimulationReport& report);

}  // namespace robustdens
