#pragma once

#include "robustdens/models.hpp"
#include "robustdens/quadrature.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace robustdens {

// (1 + sqrt((2+sqrt2)/(2-sqrt2)))^-2 = (2+sqrt2)^-2
double kappa_bar();

struct EstimatorConfig1D {
    double kappa = 0.0;  // 0 selects kappa_bar()/2
    double t = 0.0;
    double eta = 0.0;  // 0 selects (M-m)/1e8
    std::optional<RadiusRule1D> radius_rule;  // unset selects the model default
    std::size_t max_iterations = 1000000;
    QuadratureSpec quad;
    bool keep_trace = false;
};

struct SearchTrace {
    // successive intervals (1-D) or rectangles (MD), starting with Theta
    std::vector<ParameterRect> rects;
    std::vector<double> test_values;
    // MD only: probe pairs in the order they were tested
    std::vector<Point> probe_lower;
    std::vector<Point> probe_upper;
    std::vector<std::size_t> probe_step;
    std::size_t test_count = 0;
};

struct Estimate {
    Point theta_hat;
    ParameterRect final_rect;
    SearchTrace trace;
    std::vector<std::string> warnings;
};

struct RadiusPair1D {
    double r_bar = 0.0;
    double r_under = 0.0;
    bool fallback = false;  // optimal requested but unavailable, hellinger_based used
};

RadiusPair1D radius_pair_1d(const ParametricModel& model, double theta, double theta_prime, double kappa,
                            RadiusRule1D rule, const QuadratureSpec& quad = {});

// fills the zero/unset fields of `config` with the practice defaults and validates it
EstimatorConfig1D resolve_config_1d(const ParametricModel& model, EstimatorConfig1D config);

Estimate estimate_1d(const ParametricModel& model, std::span<const double> xs, const EstimatorConfig1D& config);

double test_count_bound_1d(const ParametricModel& model, double kappa, double eta);

}  // namespace robustdens
