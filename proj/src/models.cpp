#include "robustdens/models.hpp"

#include "robustdens/distance.hpp"
#include "robustdens/error.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace robustdens {

Point ParameterRect::center() const
{
    Point c(dim());
    for (std::size_t j = 0; j < dim(); ++j)
        c[j] = 0.5 * (lower[j] + upper[j]);
    return c;
}

bool ParameterRect::contains(ParamView theta, double tol) const
{
    if (theta.size() != dim())
        return false;
    for (std::size_t j = 0; j < dim(); ++j)
        if (!(theta[j] >= lower[j] - tol && theta[j] <= upper[j] + tol))
            return false;
    return true;
}

bool ParameterRect::contains(const ParameterRect& inner) const
{
    if (inner.dim() != dim())
        return false;
    for (std::size_t j = 0; j < dim(); ++j)
        if (inner.lower[j] < lower[j] || inner.upper[j] > upper[j])
            return false;
    return true;
}

void ParameterRect::validate() const
{
    if (lower.empty() || lower.size() != upper.size())
        throw Error(ErrorKind::invalid_config, "parameter rectangle needs matching non-empty bounds");
    for (std::size_t j = 0; j < dim(); ++j)
        if (!(lower[j] < upper[j]))
            throw Error(ErrorKind::invalid_config, "parameter rectangle needs lower < upper in coordinate " +
                                                       std::to_string(j + 1));
}

void RegularityConstants::validate(std::size_t d) const
{
    if (alpha.size() != d || r_lower.size() != d || r_upper.size() != d)
        throw Error(ErrorKind::invalid_config, "regularity constants must have one entry per coordinate");
    for (std::size_t j = 0; j < d; ++j) {
        if (!(alpha[j] > 0.0))
            throw Error(ErrorKind::invalid_config, "alpha must be positive");
        if (!(r_lower[j] > 0.0) || !(r_lower[j] <= r_upper[j]))
            throw Error(ErrorKind::invalid_config, "need 0 < R_lower <= R_upper");
    }
}

const char* to_string(RadiusRule1D r)
{
    switch (r) {
    case RadiusRule1D::optimal: return "optimal";
    case RadiusRule1D::hellinger_based: return "hellinger_based";
    case RadiusRule1D::parametric: return "parametric";
    }
    return "?";
}

const char* to_string(RadiusRuleMD r)
{
    switch (r) {
    case RadiusRuleMD::annexe_geometry: return "annexe_geometry";
    case RadiusRuleMD::hellinger_based: return "hellinger_based";
    case RadiusRuleMD::parametric: return "parametric";
    }
    return "?";
}

RadiusRule1D parse_radius_rule_1d(std::string_view s)
{
    if (s == "optimal")
        return RadiusRule1D::optimal;
    if (s == "hellinger_based" || s == "hellinger-based")
        return RadiusRule1D::hellinger_based;
    if (s == "parametric")
        return RadiusRule1D::parametric;
    throw Error(ErrorKind::invalid_config, "unknown 1-D radius rule '" + std::string(s) + "'");
}

RadiusRuleMD parse_radius_rule_md(std::string_view s)
{
    if (s == "annexe_geometry" || s == "annexe-geometry" || s == "optimal")
        return RadiusRuleMD::annexe_geometry;
    if (s == "hellinger_based" || s == "hellinger-based")
        return RadiusRuleMD::hellinger_based;
    if (s == "parametric")
        return RadiusRuleMD::parametric;
    throw Error(ErrorKind::invalid_config, "unknown MD radius rule '" + std::string(s) + "'");
}

ParametricModel::ParametricModel(std::string name, ParameterRect rect, RegularityConstants constants)
    : name_(std::move(name)), rect_(std::move(rect)), constants_(std::move(constants))
{
    rect_.validate();
    constants_.validate(rect_.dim());
}

void ParametricModel::density_batch(ParamView theta, std::span<const double> xs, std::span<double> out) const
{
    for (std::size_t i = 0; i < xs.size(); ++i)
        out[i] = density(theta, xs[i]);
}

std::function<double(double)> ParametricModel::bind_density(ParamView theta) const
{
    return [this, t = Point(theta.begin(), theta.end())](double x) { return density(t, x); };
}

double ParametricModel::log_density(ParamView theta, double x) const
{
    return std::log(density(theta, x));
}

std::optional<double> ParametricModel::cdf(ParamView, double) const
{
    return std::nullopt;
}

std::vector<double> ParametricModel::breakpoints(ParamView) const
{
    return {};
}

std::vector<double> ParametricModel::singular_points(ParamView) const
{
    return {};
}

std::optional<double> ParametricModel::closed_hellinger(ParamView, ParamView) const
{
    return std::nullopt;
}

std::optional<Point> ParametricModel::closed_mle(std::span<const double>) const
{
    return std::nullopt;
}

bool ParametricModel::integral_term_vanishes(ParamView, ParamView) const
{
    return translation_even();
}

std::optional<double> ParametricModel::closed_integral_term(ParamView, ParamView) const
{
    return std::nullopt;
}

std::optional<std::pair<double, double>> ParametricModel::optimal_radii_1d(double, double, double) const
{
    return std::nullopt;
}

std::optional<RadiusBox> ParametricModel::annexe_box(ParamView, double, const ParameterRect&) const
{
    return std::nullopt;
}

Point ParametricModel::per_rectangle_lower(const ParameterRect&) const
{
    // equal-constant convention: R_C,j = min_k R_k for every j
    const auto& rl = constants_.r_lower;
    double m = *std::min_element(rl.begin(), rl.end());
    return Point(rl.size(), m);
}

Sample draw_sample(const ParametricModel& model, ParamView theta, std::size_t n, std::uint64_t seed)
{
    if (!model.theta_rect().contains(theta))
        throw Error(ErrorKind::domain_error, "parameter outside the rectangle of model " + model.name());
    Rng rng(seed);
    Sample s;
    s.values.resize(n);
    for (std::size_t i = 0; i < n; ++i)
        s.values[i] = model.draw(theta, rng);
    s.provenance = "seed=" + std::to_string(seed);
    return s;
}

Sample load_sample(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw Error(ErrorKind::invalid_config, "cannot open data file " + path);
    Sample s;
    s.provenance = path;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto b = line.find_first_not_of(" \t\r");
        if (b == std::string::npos || line[b] == '#')
            continue;
        auto e = line.find_last_not_of(" \t\r");
        std::string_view tok(line.data() + b, e - b + 1);
        double v = 0.0;
        auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
        if (ec != std::errc() || ptr != tok.data() + tok.size() || !std::isfinite(v))
            throw Error(ErrorKind::invalid_config,
                        path + ":" + std::to_string(lineno) + ": not a finite number: " + std::string(tok));
        s.values.push_back(v);
    }
    if (s.values.empty())
        throw Error(ErrorKind::invalid_config, "data file " + path + " holds no observations");
    return s;
}

Assumption1Report verify_assumption1(const ParametricModel& model, std::size_t grid_per_dim,
                                     const QuadratureSpec& quad, double slack)
{
    const auto& rect = model.theta_rect();
    const auto& c = model.constants();
    const std::size_t d = model.dim();
    const std::size_t g = std::max<std::size_t>(grid_per_dim, 2);

    std::size_t total = 1;
    for (std::size_t j = 0; j < d; ++j)
        total *= g;
    std::vector<Point> grid(total, Point(d));
    for (std::size_t idx = 0; idx < total; ++idx) {
        std::size_t r = idx;
        for (std::size_t j = 0; j < d; ++j) {
            std::size_t k = r % g;
            r /= g;
            grid[idx][j] = k + 1 == g ? rect.upper[j]
                                      : rect.lower[j] + rect.width(j) * static_cast<double>(k) / (g - 1);
        }
    }

    const bool closed = model.closed_hellinger(grid[0], grid[0]).has_value();
    const double tol = slack + (closed ? 0.0 : quad.abs_tol);
    Assumption1Report rep;
    double worst = 0.0;
    for (std::size_t p = 0; p < total; ++p) {
        for (std::size_t q = p + 1; q < total; ++q) {
            const Point& a = grid[p];
            const Point& b = grid[q];
            double h2 = hellinger_sq(model, a, b, quad);
            double lo = 0.0, hi = 0.0;
            for (std::size_t j = 0; j < d; ++j) {
                double dj = std::abs(a[j] - b[j]);
                if (dj == 0.0)
                    continue;
                double pw = std::pow(dj, c.alpha[j]);
                lo = std::max(lo, c.r_lower[j] * pw);
                hi = std::max(hi, c.r_upper[j] * pw);
            }
            double vl = lo - h2, vu = h2 - hi;
            rep.max_lower_violation = std::max(rep.max_lower_violation, vl);
            rep.max_upper_violation = std::max(rep.max_upper_violation, vu);
            ++rep.pairs;
            if (vl > tol || vu > tol) {
                ++rep.violations;
                if (std::max(vl, vu) > worst) {
                    worst = std::max(vl, vu);
                    rep.worst_a = a;
                    rep.worst_b = b;
                }
            }
        }
    }
    return rep;
}

}  // namespace robustdens
