#pragma once

#include "robustdens/models.hpp"
#include "robustdens/quadrature.hpp"

#include <functional>
#include <optional>
#include <string_view>
#include <vector>

namespace robustdens {

// h2 = (1/2) int (sqrt f_a - sqrt f_b)^2, closed form when the model has one
double hellinger_sq(const ParametricModel& model, ParamView a, ParamView b, const QuadratureSpec& quad = {});

// Always integrates numerically, splitting at the breakpoints of both densities
double hellinger_sq_quadrature(const ParametricModel& model, ParamView a, ParamView b,
                               const QuadratureSpec& quad = {});

// Closed-form h2 of a catalog model, if it has one
std::optional<double> hellinger_affinity_closed(std::string_view name, ParamView a, ParamView b);

// A density outside the model (mixtures, contaminated truths)
struct ExternalDensity {
    std::function<double(double)> density;
    double lo;
    double hi;
    std::vector<double> breakpoints;
    std::vector<double> singular;
};

double hellinger_sq_external(const ExternalDensity& s, const ParametricModel& model, ParamView theta,
                             const QuadratureSpec& quad = {});

}  // namespace robustdens
