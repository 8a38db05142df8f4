#include "robustdens/search1d.hpp"

#include "robustdens/distance.hpp"
#include "robustdens/error.hpp"
#include "robustdens/testing.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace robustdens {

double kappa_bar()
{
    double s = 2.0 + std::numbers::sqrt2;
    return 1.0 / (s * s);
}

RadiusPair1D radius_pair_1d(const ParametricModel& model, double theta, double theta_prime, double kappa,
                            RadiusRule1D rule, const QuadratureSpec& quad)
{
    if (model.dim() != 1)
        throw Error(ErrorKind::invalid_config, "1-D radius rule on a model of dimension " + std::to_string(model.dim()));
    const auto& c = model.constants();
    const double alpha = c.alpha[0], rl = c.r_lower[0], ru = c.r_upper[0];
    const double a[1] = {theta}, b[1] = {theta_prime};
    RadiusPair1D out;

    if (rule == RadiusRule1D::parametric) {
        double r = std::pow(kappa * rl / ru, 1.0 / alpha) * std::abs(theta_prime - theta);
        out.r_bar = out.r_under = r;
        return out;
    }
    double h2 = hellinger_sq(model, a, b, quad);
    if (rule == RadiusRule1D::optimal) {
        if (auto r = model.optimal_radii_1d(theta, theta_prime, kappa * h2)) {
            out.r_bar = r->first;
            out.r_under = r->second;
            return out;
        }
        out.fallback = true;
    }
    double r = std::pow(kappa * h2 / ru, 1.0 / alpha);
    out.r_bar = out.r_under = r;
    return out;
}

EstimatorConfig1D resolve_config_1d(const ParametricModel& model, EstimatorConfig1D config)
{
    if (model.dim() != 1)
        throw Error(ErrorKind::invalid_config, "model " + model.name() + " is not one-dimensional");
    const auto& r = model.theta_rect();
    if (config.kappa == 0.0)
        config.kappa = kappa_bar() / 2.0;
    if (config.eta == 0.0)
        config.eta = r.width(0) / 1e8;
    if (!config.radius_rule)
        config.radius_rule = model.default_radius_rule_1d();
    if (!(config.kappa > 0.0 && config.kappa < kappa_bar())) {
        std::ostringstream msg;
        msg.precision(7);
        msg << "kappa must lie in (0, kappa_bar) with kappa_bar = " << kappa_bar() << ", got " << config.kappa;
        throw Error(ErrorKind::invalid_config, msg.str());
    }
    if (!(config.eta > 0.0))
        throw Error(ErrorKind::invalid_config, "eta must be positive");
    if (!(config.t >= 0.0))
        throw Error(ErrorKind::invalid_config, "t must be nonnegative");
    if (config.max_iterations == 0)
        throw Error(ErrorKind::invalid_config, "max_iterations must be positive");
    return config;
}

Estimate estimate_1d(const ParametricModel& model, std::span<const double> xs, const EstimatorConfig1D& config_in)
{
    const EstimatorConfig1D cfg = resolve_config_1d(model, config_in);
    if (xs.empty())
        throw Error(ErrorKind::invalid_config, "sample must hold at least one observation");

    const auto& rect = model.theta_rect();
    TestEvaluator test(model, xs, make_grid(model, {cfg.t}, xs.size()), cfg.quad);
    const RadiusRule1D rule = *cfg.radius_rule;

    Estimate est;
    double lo = rect.lower[0], hi = rect.upper[0];
    if (cfg.keep_trace)
        est.trace.rects.push_back(rect);
    bool warned = false;
    std::size_t iter = 0;
    while (hi - lo > cfg.eta) {
        if (++iter > cfg.max_iterations)
            throw Error(ErrorKind::iteration_cap_exceeded,
                        "interval search exceeded " + std::to_string(cfg.max_iterations) + " tests on " + model.name());
        const double a[1] = {lo}, b[1] = {hi};
        double t = test(a, b);
        RadiusPair1D r = radius_pair_1d(model, lo, hi, cfg.kappa, rule, cfg.quad);
        if (r.fallback && !warned) {
            est.warnings.push_back("optimal radii unavailable for " + model.name() + ", using hellinger_based");
            warned = true;
        }
        double half = 0.5 * (hi - lo);
        double step_lo = std::min(r.r_bar, half), step_hi = std::min(r.r_under, half);
        if (t >= 0.0)
            lo += step_lo;
        if (t <= 0.0)
            hi -= step_hi;
        if (cfg.keep_trace) {
            est.trace.test_values.push_back(t);
            est.trace.rects.push_back(ParameterRect{{lo}, {hi}});
        }
    }
    est.trace.test_count = test.count();
    est.final_rect = ParameterRect{{lo}, {hi}};
    est.theta_hat = {0.5 * (lo + hi)};
    return est;
}

double test_count_bound_1d(const ParametricModel& model, double kappa, double eta)
{
    const auto& c = model.constants();
    double ratio = std::pow(c.r_upper[0] / (kappa * c.r_lower[0]), 1.0 / c.alpha[0]);
    double lg = std::max(0.0, std::log(model.theta_rect().width(0) / eta));
    return 1.0 + std::max(ratio, 1.0 / std::numbers::ln2) * lg;
}

}  // namespace robustdens
