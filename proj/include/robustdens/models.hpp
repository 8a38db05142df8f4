#pragma once

#include "robustdens/quadrature.hpp"
#include "robustdens/rng.hpp"

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace robustdens {

using Point = std::vector<double>;
using ParamView = std::span<const double>;

struct ParameterRect {
    Point lower;
    Point upper;

    std::size_t dim() const { return lower.size(); }
    double width(std::size_t j) const { return upper[j] - lower[j]; }
    Point center() const;
    bool contains(ParamView theta, double tol = 0.0) const;
    bool contains(const ParameterRect& inner) const;
    // throws invalid_config unless lower < upper componentwise and d >= 1
    void validate() const;
};

struct RegularityConstants {
    Point alpha;
    Point r_lower;
    Point r_upper;

    void validate(std::size_t d) const;
};

struct Sample {
    std::vector<double> values;
    std::string provenance;

    std::size_t n() const { return values.size(); }
};

// closed or half-infinite support interval of f_theta
struct Support {
    double lo;
    double hi;
};

// box [theta_j - down_j, theta_j + up_j]
struct RadiusBox {
    Point down;
    Point up;
};

enum class RadiusRule1D { optimal, hellinger_based, parametric };
enum class RadiusRuleMD { annexe_geometry, hellinger_based, parametric };

const char* to_string(RadiusRule1D r);
const char* to_string(RadiusRuleMD r);
RadiusRule1D parse_radius_rule_1d(std::string_view s);
RadiusRuleMD parse_radius_rule_md(std::string_view s);

// A parametric family {f_theta, theta in Theta}. Instances are immutable and
// safe to share between threads.
class ParametricModel {
public:
    ParametricModel(std::string name, ParameterRect rect, RegularityConstants constants);
    virtual ~ParametricModel() = default;

    const std::string& name() const { return name_; }
    std::size_t dim() const { return rect_.dim(); }
    const ParameterRect& theta_rect() const { return rect_; }
    const RegularityConstants& constants() const { return constants_; }

    virtual double density(ParamView theta, double x) const = 0;
    // f_theta with per-parameter constants precomputed, for repeated evaluation
    virtual std::function<double(double)> bind_density(ParamView theta) const;
    virtual void density_batch(ParamView theta, std::span<const double> xs, std::span<double> out) const;
    virtual double log_density(ParamView theta, double x) const;
    virtual std::optional<double> cdf(ParamView theta, double x) const;
    virtual double draw(ParamView theta, Rng& rng) const = 0;
    virtual Support support(ParamView theta) const = 0;

    // abscissae where f_theta peaks, jumps or changes scale; quadrature splits there
    virtual std::vector<double> breakpoints(ParamView theta) const;
    // integrable infinite singularities of f_theta
    virtual std::vector<double> singular_points(ParamView theta) const;

    virtual std::optional<double> closed_hellinger(ParamView a, ParamView b) const;
    virtual std::optional<Point> closed_mle(std::span<const double> xs) const;

    // pure location family with an even base density
    virtual bool translation_even() const { return false; }
    // true when the integral term of the test statistic is exactly 0 for this pair
    virtual bool integral_term_vanishes(ParamView a, ParamView b) const;
    virtual std::optional<double> closed_integral_term(ParamView a, ParamView b) const;

    // 1-D closed geometry: largest r_up with h2(f_t, f_{t+r_up}) <= xi and
    // largest r_down with h2(f_tp, f_{tp-r_down}) <= xi (not capped to Theta)
    virtual std::optional<std::pair<double, double>> optimal_radii_1d(double t, double tp, double xi) const;
    virtual RadiusRule1D default_radius_rule_1d() const { return RadiusRule1D::hellinger_based; }

    // MD closed geometry: a box around theta included in the Hellinger ball of
    // squared radius xi once intersected with the current rectangle C
    virtual std::optional<RadiusBox> annexe_box(ParamView theta, double xi, const ParameterRect& C) const;
    // lower constants valid on C (the per-rectangle refinement)
    virtual Point per_rectangle_lower(const ParameterRect& C) const;

private:
    std::string name_;
    ParameterRect rect_;
    RegularityConstants constants_;
};

using ModelPtr = std::shared_ptr<const ParametricModel>;

const std::vector<std::string>& catalog_names();
ModelPtr catalog_lookup(std::string_view name);
// Gaussian location-scale family on an arbitrary rectangle (constants derived from it)
ModelPtr make_gauss2d(const ParameterRect& rect);

Sample draw_sample(const ParametricModel& model, ParamView theta, std::size_t n, std::uint64_t seed);
Sample load_sample(const std::string& path);

struct Assumption1Report {
    std::size_t pairs = 0;
    std::size_t violations = 0;
    double max_lower_violation = 0.0;  // max of sup_j R_j|d_j|^a_j - h2
    double max_upper_violation = 0.0;  // max of h2 - sup_j Rbar_j|d_j|^a_j
    Point worst_a;
    Point worst_b;
};

// Checks the two-sided h2 vs |theta - theta'|^alpha sandwich on all pairs of a regular grid over Theta.
// A pair counts as a violation when it misses a bound by more than `slack`.
Assumption1Report verify_assumption1(const ParametricModel& model, std::size_t grid_per_dim,
                                     const QuadratureSpec& quad = {}, double slack = 1e-9);

}  // namespace robustdens
