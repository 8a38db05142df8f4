#pragma once

#include "robustdens/models.hpp"
#include "robustdens/quadrature.hpp"

#include <span>
#include <vector>

namespace robustdens {

// Discretization lattice with mesh eps_j = t_j (Rbar_j n)^(-1/alpha_j); t_j = 0 disables it.
struct GridSpec {
    Point t;
    Point epsilon;
    Point origin;
};

GridSpec make_grid(const ParametricModel& model, const Point& t, std::size_t n);
// no discretization in any coordinate
GridSpec identity_grid(const ParametricModel& model);

Point project_to_grid(ParamView x, const GridSpec& grid);

struct TestValue {
    double value = 0.0;
    Point f_theta_used;
    Point f_theta_prime_used;
};

// (1/2) int sqrt(g+g')(sqrt g' - sqrt g), g = f_a, g' = f_b
double integral_term(const ParametricModel& model, ParamView a, ParamView b, const QuadratureSpec& quad = {});

// The statistic Tbar(f_a, f_b) on the sample. Pairs are put in lexicographic
// order before evaluation, so swapping the arguments negates the value exactly.
double baraud_statistic(const ParametricModel& model, ParamView a, ParamView b, std::span<const double> xs,
                        const QuadratureSpec& quad = {});

TestValue test_T(const ParametricModel& model, ParamView a, ParamView b, std::span<const double> xs,
                 const GridSpec& grid, const QuadratureSpec& quad = {});

// Reusable evaluator for one (model, sample) pair; keeps density buffers and a test counter.
class TestEvaluator {
public:
    TestEvaluator(const ParametricModel& model, std::span<const double> xs, GridSpec grid, QuadratureSpec quad);

    double operator()(ParamView a, ParamView b);
    std::size_t count() const { return count_; }

private:
    double canonical(ParamView a, ParamView b);

    const ParametricModel& model_;
    std::span<const double> xs_;
    GridSpec grid_;
    QuadratureSpec quad_;
    bool discretized_ = false;
    std::vector<double> ga_, gb_;
    Point pa_, pb_;
    std::size_t count_ = 0;
};

}  // namespace robustdens
