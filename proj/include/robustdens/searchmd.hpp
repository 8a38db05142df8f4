#pragma once

#include "robustdens/search1d.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace robustdens {

enum class RectConstantsMode { global, per_rectangle };

const char* to_string(RectConstantsMode m);
RectConstantsMode parse_rect_constants_mode(std::string_view s);

struct EstimatorConfigMD {
    double kappa = 0.0;  // 0 selects 0.9 kappa_bar
    Point t;             // empty selects zeros
    Point eta;           // empty selects (M_j - m_j) 1e-6
    std::optional<RadiusRuleMD> radius_rule;  // unset selects annexe_geometry
    // sweep_maps[k] lists {0..d-1}\{k} in sweep order; empty selects increasing order
    std::vector<std::vector<std::size_t>> sweep_maps;
    RectConstantsMode rect_constants_mode = RectConstantsMode::global;
    std::size_t max_outer_steps = 1000000;
    std::size_t max_inner_tests = 10000000;
    QuadratureSpec quad;
    bool keep_trace = false;
};

struct RectRadiusConstants {
    Point r_lower_C;
    Point r_upper_C;
};

struct RadiusVectors {
    Point r_bar;    // upward radii at theta
    Point r_under;  // downward radii at theta
};

RectRadiusConstants rect_constants(const ParametricModel& model, const ParameterRect& rect, RectConstantsMode mode);

std::size_t select_coordinate(const ParameterRect& rect, const RectRadiusConstants& rc, const Point& alpha);

// Radii of a box around theta inside the Hellinger ball of radius sqrt(kappa) h(f_theta, f_theta').
// h2 < 0 means "compute it".
RadiusVectors radius_vector_md(const ParametricModel& model, const ParameterRect& rect, ParamView theta,
                               ParamView theta_prime, double kappa, RadiusRuleMD rule,
                               const RectRadiusConstants& rc, const QuadratureSpec& quad = {}, double h2 = -1.0);

EstimatorConfigMD resolve_config_md(const ParametricModel& model, EstimatorConfigMD config);

class TestEvaluator;

struct StepResult {
    ParameterRect rect;
    std::size_t k = 0;
    std::size_t tests = 0;
    bool lower_moved = false;
    bool upper_moved = false;
};

// One inner sweep: Theta_i -> Theta_{i+1}. `config` must be resolved.
StepResult step_rectangle(const ParametricModel& model, TestEvaluator& test, const ParameterRect& rect,
                          const EstimatorConfigMD& config, SearchTrace* trace = nullptr, std::size_t step_index = 0);

Estimate estimate_md(const ParametricModel& model, std::span<const double> xs, const EstimatorConfigMD& config);

double test_count_bound_md(const ParametricModel& model, double kappa, const Point& eta);

}  // namespace robustdens
