#include "robustdens/searchmd.hpp"

#include "robustdens/distance.hpp"
#include "robustdens/error.hpp"
#include "robustdens/testing.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace robustdens {

const char* to_string(RectConstantsMode m)
{
    return m == RectConstantsMode::global ? "global" : "per_rectangle";
}

RectConstantsMode parse_rect_constants_mode(std::string_view s)
{
    if (s == "global")
        return RectConstantsMode::global;
    if (s == "per_rectangle" || s == "per-rectangle")
        return RectConstantsMode::per_rectangle;
    throw Error(ErrorKind::invalid_config, "unknown rectangle constants mode '" + std::string(s) + "'");
}

RectRadiusConstants rect_constants(const ParametricModel& model, const ParameterRect& rect, RectConstantsMode mode)
{
    const auto& c = model.constants();
    RectRadiusConstants rc{c.r_lower, c.r_upper};
    if (mode == RectConstantsMode::per_rectangle) {
        Point lc = model.per_rectangle_lower(rect);
        for (std::size_t j = 0; j < lc.size(); ++j)
            rc.r_lower_C[j] = std::max(lc[j], c.r_lower[j]);
    }
    return rc;
}

std::size_t select_coordinate(const ParameterRect& rect, const RectRadiusConstants& rc, const Point& alpha)
{
    std::size_t k = 0;
    double best = -1.0;
    for (std::size_t j = 0; j < rect.dim(); ++j) {
        double v = rc.r_lower_C[j] * std::pow(rect.width(j), alpha[j]);
        if (v > best) {
            best = v;
            k = j;
        }
    }
    return k;
}

RadiusVectors radius_vector_md(const ParametricModel& model, const ParameterRect& rect, ParamView theta,
                               ParamView theta_prime, double kappa, RadiusRuleMD rule,
                               const RectRadiusConstants& rc, const QuadratureSpec& quad, double h2)
{
    const std::size_t d = model.dim();
    const auto& alpha = model.constants().alpha;
    RadiusVectors out{Point(d), Point(d)};
    if (rule == RadiusRuleMD::parametric) {
        double s = 0.0;
        for (std::size_t j = 0; j < d; ++j)
            s = std::max(s, rc.r_lower_C[j] * std::pow(std::abs(theta_prime[j] - theta[j]), alpha[j]));
        for (std::size_t j = 0; j < d; ++j)
            out.r_bar[j] = out.r_under[j] = std::pow(kappa * s / rc.r_upper_C[j], 1.0 / alpha[j]);
        return out;
    }
    if (h2 < 0.0)
        h2 = hellinger_sq(model, theta, theta_prime, quad);
    if (rule == RadiusRuleMD::hellinger_based) {
        for (std::size_t j = 0; j < d; ++j)
            out.r_bar[j] = out.r_under[j] = std::pow(kappa * h2 / rc.r_upper_C[j], 1.0 / alpha[j]);
        return out;
    }
    auto box = model.annexe_box(theta, kappa * h2, rect);
    if (!box)
        throw Error(ErrorKind::unsupported_rule, "model " + model.name() + " has no closed rectangle geometry");
    out.r_bar = std::move(box->up);
    out.r_under = std::move(box->down);
    return out;
}

EstimatorConfigMD resolve_config_md(const ParametricModel& model, EstimatorConfigMD config)
{
    const std::size_t d = model.dim();
    const auto& rect = model.theta_rect();
    if (config.kappa == 0.0)
        config.kappa = 0.9 * kappa_bar();
    if (config.t.empty())
        config.t.assign(d, 0.0);
    if (config.eta.empty()) {
        config.eta.resize(d);
        for (std::size_t j = 0; j < d; ++j)
            config.eta[j] = rect.width(j) * 1e-6;
    }
    if (!config.radius_rule)
        config.radius_rule = RadiusRuleMD::annexe_geometry;
    if (config.sweep_maps.empty()) {
        config.sweep_maps.resize(d);
        for (std::size_t k = 0; k < d; ++k)
            for (std::size_t j = 0; j < d; ++j)
                if (j != k)
                    config.sweep_maps[k].push_back(j);
    }

    if (!(config.kappa > 0.0 && config.kappa < kappa_bar())) {
        std::ostringstream msg;
        msg.precision(7);
        msg << "kappa must lie in (0, kappa_bar) with kappa_bar = " << kappa_bar() << ", got " << config.kappa;
        throw Error(ErrorKind::invalid_config, msg.str());
    }
    if (config.t.size() != d || config.eta.size() != d)
        throw Error(ErrorKind::invalid_config, "t and eta need one entry per coordinate");
    for (std::size_t j = 0; j < d; ++j) {
        if (!(config.eta[j] > 0.0))
            throw Error(ErrorKind::invalid_config, "eta must be positive in every coordinate");
        if (!(config.t[j] >= 0.0))
            throw Error(ErrorKind::invalid_config, "t must be nonnegative in every coordinate");
    }
    if (config.sweep_maps.size() != d)
        throw Error(ErrorKind::invalid_config, "need one sweep map per coordinate");
    for (std::size_t k = 0; k < d; ++k) {
        auto m = config.sweep_maps[k];
        std::sort(m.begin(), m.end());
        std::vector<std::size_t> want;
        for (std::size_t j = 0; j < d; ++j)
            if (j != k)
                want.push_back(j);
        if (m != want)
            throw Error(ErrorKind::invalid_config,
                        "sweep map " + std::to_string(k + 1) + " is not a bijection onto the other coordinates");
    }
    if (config.max_outer_steps == 0 || config.max_inner_tests == 0)
        throw Error(ErrorKind::invalid_config, "iteration caps must be positive");
    return config;
}

StepResult step_rectangle(const ParametricModel& model, TestEvaluator& test, const ParameterRect& rect,
                          const EstimatorConfigMD& cfg, SearchTrace* trace, std::size_t step_index)
{
    const std::size_t d = model.dim();
    const auto& alpha = model.constants().alpha;
    const RadiusRuleMD rule = *cfg.radius_rule;
    const RectRadiusConstants rc = rect_constants(model, rect, cfg.rect_constants_mode);
    const Point& a = rect.lower;
    const Point& b = rect.upper;
    const std::size_t k = select_coordinate(rect, rc, alpha);
    const auto& psi = cfg.sweep_maps[k];
    const std::size_t nsweep = psi.size();
    constexpr std::size_t none = static_cast<std::size_t>(-1);

    Point th = a, thp = a;
    thp[k] = b[k];

    auto radii = [&](const Point& x, const Point& y, double h2) {
        return radius_vector_md(model, rect, x, y, cfg.kappa, rule, rc, cfg.quad, h2);
    };
    auto pair_h2 = [&] {
        return rule == RadiusRuleMD::parametric ? 0.0 : hellinger_sq(model, th, thp, cfg.quad);
    };

    Point eps(d), epsp(d);
    {
        double h2 = pair_h2();
        RadiusVectors r = radii(th, thp, h2), rp = radii(thp, th, h2);
        eps = r.r_bar;
        epsp = rp.r_bar;
        eps[k] = epsp[k] = 0.5 * (b[k] - a[k]);
    }

    // advance one probe along the sweep; returns the index moved or d when the sweep is complete
    auto advance = [&](Point& p, Point& e) -> std::size_t {
        for (std::size_t j = 0; j < nsweep; ++j) {
            std::size_t c = psi[j];
            if (p[c] + e[c] < b[c]) {
                for (std::size_t i = 0; i < j; ++i)
                    p[psi[i]] = a[psi[i]];
                p[c] += e[c];
                return j;
            }
        }
        return d;
    };

    StepResult res;
    res.k = k;
    std::size_t jmin = none, jpmin = none;
    for (;;) {
        if (++res.tests > cfg.max_inner_tests)
            throw Error(ErrorKind::iteration_cap_exceeded,
                        "rectangle step exceeded " + std::to_string(cfg.max_inner_tests) + " tests on " + model.name());
        double t = test(th, thp);
        if (trace) {
            trace->probe_lower.push_back(th);
            trace->probe_upper.push_back(thp);
            trace->probe_step.push_back(step_index);
            trace->test_values.push_back(t);
        }
        double h2 = pair_h2();
        if (t >= 0.0) {
            RadiusVectors r = radii(th, thp, h2);
            for (std::size_t j = 0; j < nsweep; ++j) {
                std::size_t c = psi[j];
                eps[c] = j == 0 ? r.r_bar[c] : std::min(eps[c], r.r_bar[c]);
            }
            eps[k] = std::min(eps[k], r.r_bar[k]);
            jmin = advance(th, eps);
        }
        if (t <= 0.0) {
            RadiusVectors rp = radii(thp, th, h2);
            for (std::size_t j = 0; j < nsweep; ++j) {
                std::size_t c = psi[j];
                epsp[c] = j == 0 ? rp.r_bar[c] : std::min(epsp[c], rp.r_bar[c]);
            }
            epsp[k] = std::min(epsp[k], rp.r_under[k]);
            jpmin = advance(thp, epsp);
        }
        if (jmin == d || jpmin == d)
            break;
    }

    res.rect = rect;
    if (jmin == d) {
        res.rect.lower[k] += eps[k];
        res.lower_moved = true;
    }
    if (jpmin == d) {
        res.rect.upper[k] -= epsp[k];
        res.upper_moved = true;
    }
    return res;
}

Estimate estimate_md(const ParametricModel& model, std::span<const double> xs, const EstimatorConfigMD& config_in)
{
    const EstimatorConfigMD cfg = resolve_config_md(model, config_in);
    if (xs.empty())
        throw Error(ErrorKind::invalid_config, "sample must hold at least one observation");
    const std::size_t d = model.dim();
    TestEvaluator test(model, xs, make_grid(model, cfg.t, xs.size()), cfg.quad);

    Estimate est;
    ParameterRect rect = model.theta_rect();
    if (cfg.keep_trace)
        est.trace.rects.push_back(rect);
    auto open = [&] {
        for (std::size_t j = 0; j < d; ++j)
            if (rect.width(j) > cfg.eta[j])
                return true;
        return false;
    };
    std::size_t steps = 0;
    while (open()) {
        if (++steps > cfg.max_outer_steps)
            throw Error(ErrorKind::iteration_cap_exceeded,
                        "rectangle search exceeded " + std::to_string(cfg.max_outer_steps) + " steps on " + model.name());
        StepResult r = step_rectangle(model, test, rect, cfg, cfg.keep_trace ? &est.trace : nullptr, steps - 1);
        rect = r.rect;
        if (cfg.keep_trace)
            est.trace.rects.push_back(rect);
    }
    est.trace.test_count = test.count();
    est.final_rect = rect;
    est.theta_hat = rect.center();
    return est;
}

double test_count_bound_md(const ParametricModel& model, double kappa, const Point& eta)
{
    const auto& c = model.constants();
    const auto& rect = model.theta_rect();
    double prod = 1.0, sum = 0.0;
    for (std::size_t j = 0; j < model.dim(); ++j) {
        prod *= 1.0 + std::pow(c.r_upper[j] / (kappa * c.r_lower[j]), 1.0 / c.alpha[j]);
        sum += std::max(1.0, std::log(rect.width(j) / eta[j]));
    }
    return 4.0 * prod * sum;
}

}  // namespace robustdens
