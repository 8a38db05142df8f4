#pragma once

#include "robustdens/distance.hpp"
#include "robustdens/models.hpp"

#include <cstdint>

namespace robustdens {

enum class TruthKind { in_model, uniform_contaminated, uniform_mixture, gaussian_mixture };

// The density generating the observations.
//  in_model             f_theta0
//  uniform_contaminated 10[(1 - 2/n) 1_[0,0.1] + (2/n) 1_[0.9,1]]
//  uniform_mixture      (1-p) U[0,1] + p U[0,2]
//  gaussian_mixture     (1-p) N(-5,1) + p N(5,1)
struct Truth {
    TruthKind kind = TruthKind::in_model;
    Point theta0;
    double p = 0.0;
};

const char* to_string(TruthKind k);

// n is the sample size (the contaminated density depends on it)
Sample draw_truth(const ParametricModel& model, const Truth& truth, std::size_t n, std::uint64_t seed);
ExternalDensity truth_density(const Truth& truth, std::size_t n);
// h2(s, f_theta); closed forms for the uniform-scale truths, quadrature for the Gaussian mixture
double truth_h2(const ParametricModel& model, const Truth& truth, std::size_t n, ParamView theta,
                const QuadratureSpec& quad = {});

}  // namespace robustdens
