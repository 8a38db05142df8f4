#pragma once

#include "robustdens/models.hpp"

#include <functional>
#include <span>
#include <string_view>
#include <vector>

namespace robustdens {

enum class BaselineKind { mle_closed, mle_grid, mspe, median, mean, mvub, midrange };

const char* to_string(BaselineKind k);
BaselineKind parse_baseline_kind(std::string_view s);

struct BaselineSpec {
    BaselineKind kind = BaselineKind::mle_closed;
    std::size_t grid_points = 100000;
};

Point mle_closed(const ParametricModel& model, std::span<const double> xs);

// 1-D likelihood on equally spaced grids of width 2 around each anchor (clamped to Theta)
Point mle_grid(const ParametricModel& model, std::span<const double> xs, std::size_t grid_points,
               const std::vector<double>& anchors);

// Maximizer of `f` over a rectangle by repeated grid refinement: a coarse
// grid over `rect` (plus the anchors as extra starting points), then zooming
// into +-2 cells around the incumbent until the cell is below rel_tol * width.
Point zoom_argmax(const std::function<double(ParamView)>& f, const ParameterRect& rect,
                  const std::vector<Point>& anchors = {}, std::size_t coarse = 61, std::size_t fine = 21,
                  double rel_tol = 1e-10);

// MD likelihood maximized with zoom_argmax
Point mle_grid_md(const ParametricModel& model, std::span<const double> xs, const std::vector<Point>& anchors = {});

// Maximum spacing product over grid_points equally spaced values of Theta (1-D)
Point mspe(const ParametricModel& model, std::span<const double> xs, std::size_t grid_points);

// median (lower), mean, mvub = (n+1)/n max, midrange; clamped to Theta
Point simple_stats(const ParametricModel& model, std::span<const double> xs, BaselineKind kind);

double log_likelihood(const ParametricModel& model, ParamView theta, std::span<const double> xs);

}  // namespace robustdens
