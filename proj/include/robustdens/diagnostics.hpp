#pragma once

#include "robustdens/models.hpp"

namespace robustdens {

// d / sum_j 1/alpha_j
double harmonic_mean_alpha(const Point& alpha);

// max{d, sum_j log(1 + t_j^-1 ((d/abar)(c Rbar_j / R_j))^(1/alpha_j))}
double dimension_df(const RegularityConstants& constants, const Point& t, double c = 1.0);

// one-dimensional variant log(1 + t^-1 (c Rbar / (alpha R))^(1/alpha)), without the max
double dimension_df_1d(double alpha, double r_lower, double r_upper, double t, double c = 1.0);

struct TheoryBundle {
    double alpha_bar = 0.0;
    double d_f = 0.0;
    double d_f_1d = 0.0;    // NaN unless d = 1
    double bound_1d = 0.0;  // NaN unless d = 1
    double bound_md = 0.0;
};

// Requires t_j > 0 in every coordinate (theory mode); c is a free constant, 1 by default.
TheoryBundle compute_theory_bundle(const ParametricModel& model, const Point& t, double kappa, const Point& eta,
                                   double c = 1.0);

}  // namespace robustdens
