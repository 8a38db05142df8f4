#include "robustdens/testing.hpp"

#include "robustdens/error.hpp"

#include <algorithm>
#include <cmath>

namespace robustdens {

GridSpec make_grid(const ParametricModel& model, const Point& t, std::size_t n)
{
    const std::size_t d = model.dim();
    if (t.size() != d)
        throw Error(ErrorKind::invalid_config, "grid thinness t needs one entry per coordinate");
    if (n == 0)
        throw Error(ErrorKind::invalid_config, "sample size must be positive");
    const auto& c = model.constants();
    GridSpec g;
    g.t = t;
    g.origin = model.theta_rect().lower;
    g.epsilon.resize(d);
    for (std::size_t j = 0; j < d; ++j) {
        if (!(t[j] >= 0.0))
            throw Error(ErrorKind::invalid_config, "grid thinness t must be nonnegative");
        g.epsilon[j] = t[j] == 0.0 ? 0.0 : t[j] * std::pow(c.r_upper[j] * static_cast<double>(n), -1.0 / c.alpha[j]);
    }
    return g;
}

GridSpec identity_grid(const ParametricModel& model)
{
    const std::size_t d = model.dim();
    return {Point(d, 0.0), Point(d, 0.0), model.theta_rect().lower};
}

Point project_to_grid(ParamView x, const GridSpec& grid)
{
    Point p(x.begin(), x.end());
    for (std::size_t j = 0; j < p.size(); ++j) {
        double e = grid.epsilon[j];
        if (e <= 0.0)
            continue;
        // floor of the cell index, corrected for rounding so grid points map to themselves
        double k = std::floor((x[j] - grid.origin[j]) / e);
        if (grid.origin[j] + (k + 1.0) * e <= x[j])
            k += 1.0;
        else if (grid.origin[j] + k * e > x[j])
            k -= 1.0;
        p[j] = grid.origin[j] + k * e;
    }
    return p;
}

double integral_term(const ParametricModel& model, ParamView a, ParamView b, const QuadratureSpec& quad)
{
    if (model.integral_term_vanishes(a, b))
        return 0.0;
    if (auto c = model.closed_integral_term(a, b))
        return *c;

    Support sa = model.support(a), sb = model.support(b);
    double lo = std::min(sa.lo, sb.lo), hi = std::max(sa.hi, sb.hi);
    std::vector<double> cuts{sa.lo, sa.hi, sb.lo, sb.hi};
    for (double v : model.breakpoints(a))
        cuts.push_back(v);
    for (double v : model.breakpoints(b))
        cuts.push_back(v);
    std::vector<double> sing = model.singular_points(a);
    for (double v : model.singular_points(b))
        sing.push_back(v);
    cuts.insert(cuts.end(), sing.begin(), sing.end());

    auto fa = model.bind_density(a), fb = model.bind_density(b);
    auto f = [&](double x) {
        double g = fa(x), gp = fb(x);
        return 0.5 * std::sqrt(g + gp) * (std::sqrt(gp) - std::sqrt(g));
    };
    return integrate(f, lo, hi, cuts, sing, quad).value;
}

namespace {

double empirical_term(std::span<const double> ga, std::span<const double> gb)
{
    double s = 0.0;
    for (std::size_t i = 0; i < ga.size(); ++i) {
        double g = ga[i], gp = gb[i];
        double tot = g + gp;
        if (tot > 0.0)
            s += (std::sqrt(gp) - std::sqrt(g)) / std::sqrt(tot);
    }
    return s / static_cast<double>(ga.size());
}

}  // namespace

TestEvaluator::TestEvaluator(const ParametricModel& model, std::span<const double> xs, GridSpec grid,
                             QuadratureSpec quad)
    : model_(model), xs_(xs), grid_(std::move(grid)), quad_(quad), ga_(xs.size()), gb_(xs.size())
{
    if (xs.empty())
        throw Error(ErrorKind::invalid_config, "sample must hold at least one observation");
    discretized_ = std::any_of(grid_.epsilon.begin(), grid_.epsilon.end(), [](double e) { return e > 0.0; });
}

double TestEvaluator::canonical(ParamView a, ParamView b)
{
    // caller guarantees a < b lexicographically
    model_.density_batch(a, xs_, ga_);
    model_.density_batch(b, xs_, gb_);
    return empirical_term(ga_, gb_) + integral_term(model_, a, b, quad_);
}

double TestEvaluator::operator()(ParamView a, ParamView b)
{
    ++count_;
    if (discretized_) {
        pa_ = project_to_grid(a, grid_);
        pb_ = project_to_grid(b, grid_);
        a = pa_;
        b = pb_;
    }
    if (std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end()))
        return canonical(a, b);
    if (std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end()))
        return -canonical(b, a);
    return 0.0;
}

double baraud_statistic(const ParametricModel& model, ParamView a, ParamView b, std::span<const double> xs,
                        const QuadratureSpec& quad)
{
    TestEvaluator ev(model, xs, identity_grid(model), quad);
    return ev(a, b);
}

TestValue test_T(const ParametricModel& model, ParamView a, ParamView b, std::span<const double> xs,
                 const GridSpec& grid, const QuadratureSpec& quad)
{
    TestValue tv;
    tv.f_theta_used = project_to_grid(a, grid);
    tv.f_theta_prime_used = project_to_grid(b, grid);
    tv.value = baraud_statistic(model, tv.f_theta_used, tv.f_theta_prime_used, xs, quad);
    return tv;
}

}  // namespace robustdens
