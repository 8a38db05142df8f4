#include "robustdens/error.hpp"
#include "robustdens/models.hpp"
#include "robustdens/special.hpp"

#include <boost/math/special_functions/beta.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <numeric>

namespace robustdens {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kInvSqrt2Pi = 0.398942280401432677939946059934;
constexpr double kLogSqrt2Pi = 0.918938533204672741780329736406;

double clamp_to(double v, double lo, double hi)
{
    return std::min(std::max(v, lo), hi);
}

Point clamp_point(Point p, const ParameterRect& r)
{
    for (std::size_t j = 0; j < p.size(); ++j)
        p[j] = clamp_to(p[j], r.lower[j], r.upper[j]);
    return p;
}

double mean_of(std::span<const double> xs)
{
    double s = 0.0;
    for (double x : xs)
        s += x;
    return s / static_cast<double>(xs.size());
}

// h2 between U[m, m+r] and U[m', m'+r']
double uniform_pair_h2(double m, double r, double mp, double rp)
{
    double ov = std::max(0.0, std::min(m + r, mp + rp) - std::max(m, mp));
    return std::max(0.0, 1.0 - ov / std::sqrt(r * rp));
}

// (1/2) int sqrt(g+g')(sqrt g' - sqrt g) for g = U[m, m+r], g' = U[m', m'+r']
double uniform_pair_integral(double m, double r, double mp, double rp)
{
    double ov = std::max(0.0, std::min(m + r, mp + rp) - std::max(m, mp));
    double both = ov * std::sqrt(1.0 / r + 1.0 / rp) * (1.0 / std::sqrt(rp) - 1.0 / std::sqrt(r));
    return 0.5 * (both - (r - ov) / r + (rp - ov) / rp);
}

// Gaussian h2 written as (1-A) + A(1-B) to keep precision when h2 is tiny
double gauss_h2(double m, double s, double mp, double sp)
{
    double ss = s * s + sp * sp;
    double q = (s - sp) * (s - sp) / ss;
    double one_minus_a = q / (1.0 + std::sqrt(1.0 - q));
    double one_minus_b = -std::expm1(-(m - mp) * (m - mp) / (4.0 * ss));
    return one_minus_a + (1.0 - one_minus_a) * one_minus_b;
}

// (sqrt l - sqrt l')^2 / (l + l') = 1 - 2 sqrt(l l')/(l + l')
double rate_h2(double l, double lp)
{
    double d = std::sqrt(l) - std::sqrt(lp);
    return d * d / (l + lp);
}

// root u > 1 of (u-1)^2 = xi (1+u^2)
double ratio_root(double xi)
{
    return (1.0 + std::sqrt(2.0 * xi - xi * xi)) / (1.0 - xi);
}

ParameterRect rect1(double lo, double hi)
{
    return {{lo}, {hi}};
}

RegularityConstants consts1(double alpha, double rl, double ru)
{
    return {{alpha}, {rl}, {ru}};
}

// ---------------------------------------------------------------- 1-D models

class ExpRate final : public ParametricModel {
public:
    ExpRate() : ParametricModel("exp-rate", rect1(0.01, 100.0), consts1(2.0, 1.0 / 80000.0, 1250.0)) {}

    double density(ParamView t, double x) const override { return x < 0.0 ? 0.0 : t[0] * std::exp(-t[0] * x); }
    void density_batch(ParamView t, std::span<const double> xs, std::span<double> out) const override
    {
        const double l = t[0];
        for (std::size_t i = 0; i < xs.size(); ++i)
            out[i] = xs[i] < 0.0 ? 0.0 : l * std::exp(-l * xs[i]);
    }
    double log_density(ParamView t, double x) const override
    {
        return x < 0.0 ? -kInf : std::log(t[0]) - t[0] * x;
    }
    std::optional<double> cdf(ParamView t, double x) const override
    {
        return x <= 0.0 ? 0.0 : -std::expm1(-t[0] * x);
    }
    double draw(ParamView t, Rng& rng) const override { return -std::log1p(-rng.uniform()) / t[0]; }
    Support support(ParamView) const override { return {0.0, kInf}; }
    std::vector<double> breakpoints(ParamView t) const override
    {
        return {1.0 / t[0], 4.0 / t[0], 16.0 / t[0], 64.0 / t[0]};
    }
    std::optional<double> closed_hellinger(ParamView a, ParamView b) const override { return rate_h2(a[0], b[0]); }
    std::optional<Point> closed_mle(std::span<const double> xs) const override
    {
        double m = mean_of(xs);
        double v = m > 0.0 ? 1.0 / m : theta_rect().upper[0];
        return clamp_point({v}, theta_rect());
    }
    std::optional<std::pair<double, double>> optimal_radii_1d(double t, double tp, double xi) const override
    {
        double u = ratio_root(xi);
        return std::pair{t * (u * u - 1.0), tp * (1.0 - 1.0 / (u * u))};
    }
    RadiusRule1D default_radius_rule_1d() const override { return RadiusRule1D::optimal; }
};

class GaussLoc final : public ParametricModel {
public:
    GaussLoc()
        : ParametricModel("gauss-loc", rect1(-100.0, 100.0),
                          consts1(2.0, -std::expm1(-200.0 * 200.0 / 8.0) / (200.0 * 200.0), 0.125))
    {
    }

    double density(ParamView t, double x) const override
    {
        double z = x - t[0];
        return kInvSqrt2Pi * std::exp(-0.5 * z * z);
    }
    void density_batch(ParamView t, std::span<const double> xs, std::span<double> out) const override
    {
        const double m = t[0];
        for (std::size_t i = 0; i < xs.size(); ++i) {
            double z = xs[i] - m;
            out[i] = kInvSqrt2Pi * std::exp(-0.5 * z * z);
        }
    }
    double log_density(ParamView t, double x) const override
    {
        double z = x - t[0];
        return -0.5 * z * z - kLogSqrt2Pi;
    }
    std::optional<double> cdf(ParamView t, double x) const override
    {
        return 0.5 * std::erfc(-(x - t[0]) / std::numbers::sqrt2);
    }
    double draw(ParamView t, Rng& rng) const override { return t[0] + rng.normal(); }
    Support support(ParamView) const override { return {-kInf, kInf}; }
    std::vector<double> breakpoints(ParamView t) const override
    {
        double m = t[0];
        return {m - 8.0, m - 3.0, m, m + 3.0, m + 8.0};
    }
    std::optional<double> closed_hellinger(ParamView a, ParamView b) const override
    {
        double d = a[0] - b[0];
        return -std::expm1(-d * d / 8.0);
    }
    std::optional<Point> closed_mle(std::span<const double> xs) const override
    {
        return clamp_point({mean_of(xs)}, theta_rect());
    }
    bool translation_even() const override { return true; }
    std::optional<std::pair<double, double>> optimal_radii_1d(double, double, double xi) const override
    {
        double r = std::sqrt(-8.0 * std::log1p(-xi));
        return std::pair{r, r};
    }
    RadiusRule1D default_radius_rule_1d() const override { return RadiusRule1D::optimal; }
};

class Rayleigh final : public ParametricModel {
public:
    Rayleigh() : ParametricModel("rayleigh", rect1(0.01, 100.0), consts1(2.0, 5e-5, 5000.0)) {}

    double density(ParamView t, double x) const override
    {
        if (x < 0.0)
            return 0.0;
        double s2 = t[0] * t[0];
        return x / s2 * std::exp(-x * x / (2.0 * s2));
    }
    void density_batch(ParamView t, std::span<const double> xs, std::span<double> out) const override
    {
        const double s2 = t[0] * t[0];
        const double inv = 1.0 / s2;
        const double half_inv = 0.5 / s2;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            double x = xs[i];
            out[i] = x < 0.0 ? 0.0 : x * inv * std::exp(-x * x * half_inv);
        }
    }
    double log_density(ParamView t, double x) const override
    {
        if (x <= 0.0)
            return -kInf;
        double s2 = t[0] * t[0];
        return std::log(x / s2) - x * x / (2.0 * s2);
    }
    std::optional<double> cdf(ParamView t, double x) const override
    {
        return x <= 0.0 ? 0.0 : -std::expm1(-x * x / (2.0 * t[0] * t[0]));
    }
    double draw(ParamView t, Rng& rng) const override
    {
        return t[0] * std::sqrt(-2.0 * std::log1p(-rng.uniform()));
    }
    Support support(ParamView) const override { return {0.0, kInf}; }
    std::vector<double> breakpoints(ParamView t) const override
    {
        double s = t[0];
        return {s, 3.0 * s, 6.0 * s, 12.0 * s};
    }
    std::optional<double> closed_hellinger(ParamView a, ParamView b) const override
    {
        double d = a[0] - b[0];
        return d * d / (a[0] * a[0] + b[0] * b[0]);
    }
    std::optional<Point> closed_mle(std::span<const double> xs) const override
    {
        double s = 0.0;
        for (double x : xs)
            s += x * x;
        return clamp_point({std::sqrt(s / (2.0 * static_cast<double>(xs.size())))}, theta_rect());
    }
    std::optional<std::pair<double, double>> optimal_radii_1d(double t, double tp, double xi) const override
    {
        double u = ratio_root(xi);
        return std::pair{t * (u - 1.0), tp * (1.0 - 1.0 / u)};
    }
    RadiusRule1D default_radius_rule_1d() const override { return RadiusRule1D::optimal; }
};

class CauchyLoc final : public ParametricModel {
public:
    CauchyLoc() : ParametricModel("cauchy-loc", rect1(-10.0, 10.0), consts1(2.0, 0.0019, 1.0 / 16.0)) {}

    double density(ParamView t, double x) const override
    {
        double z = x - t[0];
        return 1.0 / (std::numbers::pi * (1.0 + z * z));
    }
    void density_batch(ParamView t, std::span<const double> xs, std::span<double> out) const override
    {
        const double m = t[0];
        for (std::size_t i = 0; i < xs.size(); ++i) {
            double z = xs[i] - m;
            out[i] = 1.0 / (std::numbers::pi * (1.0 + z * z));
        }
    }
    double log_density(ParamView t, double x) const override
    {
        double z = x - t[0];
        return -std::log(std::numbers::pi) - std::log1p(z * z);
    }
    std::optional<double> cdf(ParamView t, double x) const override
    {
        return 0.5 + std::atan(x - t[0]) / std::numbers::pi;
    }
    double draw(ParamView t, Rng& rng) const override
    {
        return t[0] + std::tan(std::numbers::pi * (rng.uniform_open() - 0.5));
    }
    Support support(ParamView) const override { return {-kInf, kInf}; }
    std::vector<double> breakpoints(ParamView t) const override
    {
        double m = t[0];
        return {m - 20.0, m - 3.0, m - 1.0, m, m + 1.0, m + 3.0, m + 20.0};
    }
    bool translation_even() const override { return true; }
};

class UnifScale final : public ParametricModel {
public:
    UnifScale() : ParametricModel("unif-scale", rect1(0.01, 10.0), consts1(1.0, 0.05, 50.0)) {}

    double density(ParamView t, double x) const override { return x >= 0.0 && x <= t[0] ? 1.0 / t[0] : 0.0; }
    void density_batch(ParamView t, std::span<const double> xs, std::span<double> out) const override
    {
        const double th = t[0], v = 1.0 / t[0];
        for (std::size_t i = 0; i < xs.size(); ++i)
            out[i] = xs[i] >= 0.0 && xs[i] <= th ? v : 0.0;
    }
    std::optional<double> cdf(ParamView t, double x) const override { return clamp_to(x / t[0], 0.0, 1.0); }
    double draw(ParamView t, Rng& rng) const override { return t[0] * rng.uniform(); }
    Support support(ParamView t) const override { return {0.0, t[0]}; }
    std::optional<double> closed_hellinger(ParamView a, ParamView b) const override
    {
        double x = a[0], y = b[0];
        return std::abs(x - y) / ((std::sqrt(x) + std::sqrt(y)) * std::sqrt(std::max(x, y)));
    }
    std::optional<Point> closed_mle(std::span<const double> xs) const override
    {
        return clamp_point({*std::max_element(xs.begin(), xs.end())}, theta_rect());
    }
    std::optional<double> closed_integral_term(ParamView a, ParamView b) const override
    {
        return uniform_pair_integral(0.0, a[0], 0.0, b[0]);
    }
    std::optional<std::pair<double, double>> optimal_radii_1d(double t, double tp, double xi) const override
    {
        double k = (1.0 - xi) * (1.0 - xi);
        return std::pair{t * (1.0 / k - 1.0), tp * (1.0 - k)};
    }
    RadiusRule1D default_radius_rule_1d() const override { return RadiusRule1D::optimal; }
};

double pareto_h2(double delta)
{
    delta = std::abs(delta);
    if (delta < 1e-4) {
        // 1 - log(1+d)/d = d/2 - d^2/3 + d^3/4 - d^4/5 + ...
        return delta * (0.5 - delta * (1.0 / 3.0 - delta * (0.25 - delta * 0.2)));
    }
    return 1.0 - std::log1p(delta) / delta;
}

class ParetoShift final : public ParametricModel {
public:
    ParetoShift()
        : ParametricModel("pareto-shift", rect1(-10.0, 10.0), consts1(1.0, pareto_h2(20.0) / 20.0, 0.5))
    {
    }

    double density(ParamView t, double x) const override
    {
        if (x < t[0])
            return 0.0;
        double y = x - t[0] + 1.0;
        return 1.0 / (y * y);
    }
    void density_batch(ParamView t, std::span<const double> xs, std::span<double> out) const override
    {
        const double th = t[0];
        for (std::size_t i = 0; i < xs.size(); ++i) {
            double y = xs[i] - th + 1.0;
            out[i] = xs[i] < th ? 0.0 : 1.0 / (y * y);
        }
    }
    std::optional<double> cdf(ParamView t, double x) const override
    {
        return x <= t[0] ? 0.0 : 1.0 - 1.0 / (x - t[0] + 1.0);
    }
    double draw(ParamView t, Rng& rng) const override
    {
        double u = rng.uniform();
        return t[0] + u / (1.0 - u);
    }
    Support support(ParamView t) const override { return {t[0], kInf}; }
    std::vector<double> breakpoints(ParamView t) const override
    {
        return {t[0] + 1.0, t[0] + 10.0, t[0] + 100.0};
    }
    std::optional<double> closed_hellinger(ParamView a, ParamView b) const override
    {
        return pareto_h2(a[0] - b[0]);
    }
    std::optional<Point> closed_mle(std::span<const double> xs) const override
    {
        return clamp_point({*std::min_element(xs.begin(), xs.end())}, theta_rect());
    }
};

class UnifLoc final : public ParametricModel {
public:
    UnifLoc() : ParametricModel("unif-loc", rect1(-10.0, 10.0), consts1(1.0, 0.05, 1.0)) {}

    double density(ParamView t, double x) const override { return std::abs(x - t[0]) <= 0.5 ? 1.0 : 0.0; }
    void density_batch(ParamView t, std::span<const double> xs, std::span<double> out) const override
    {
        const double th = t[0];
        for (std::size_t i = 0; i < xs.size(); ++i)
            out[i] = std::abs(xs[i] - th) <= 0.5 ? 1.0 : 0.0;
    }
    std::optional<double> cdf(ParamView t, double x) const override
    {
        return clamp_to(x - t[0] + 0.5, 0.0, 1.0);
    }
    double draw(ParamView t, Rng& rng) const override { return t[0] + rng.uniform() - 0.5; }
    Support support(ParamView t) const override { return {t[0] - 0.5, t[0] + 0.5}; }
    std::optional<double> closed_hellinger(ParamView a, ParamView b) const override
    {
        return std::min(std::abs(a[0] - b[0]), 1.0);
    }
    bool translation_even() const override { return true; }
    std::optional<std::pair<double, double>> optimal_radii_1d(double, double, double xi) const override
    {
        return std::pair{xi, xi};
    }
    RadiusRule1D default_radius_rule_1d() const override { return RadiusRule1D::optimal; }
};

class SqrtSingular final : public ParametricModel {
public:
    SqrtSingular()
        : ParametricModel("sqrt-singular", rect1(-1.0, 1.0), consts1(0.5, 0.17, 1.0 / std::numbers::sqrt2))
    {
    }

    // f(theta) = 0 by convention
    double density(ParamView t, double x) const override
    {
        double d = std::abs(x - t[0]);
        return d == 0.0 || d > 1.0 ? 0.0 : 0.25 / std::sqrt(d);
    }
    void density_batch(ParamView t, std::span<const double> xs, std::span<double> out) const override
    {
        const double th = t[0];
        for (std::size_t i = 0; i < xs.size(); ++i) {
            double d = std::abs(xs[i] - th);
            out[i] = d == 0.0 || d > 1.0 ? 0.0 : 0.25 / std::sqrt(d);
        }
    }
    std::optional<double> cdf(ParamView t, double x) const override
    {
        double d = x - t[0];
        if (d <= -1.0)
            return 0.0;
        if (d >= 1.0)
            return 1.0;
        double h = 0.5 * std::sqrt(std::abs(d));
        return d < 0.0 ? 0.5 - h : 0.5 + h;
    }
    double draw(ParamView t, Rng& rng) const override
    {
        double v = rng.uniform() - 0.5;
        double w = 2.0 * v;
        return t[0] + (v < 0.0 ? -w * w : w * w);
    }
    Support support(ParamView t) const override { return {t[0] - 1.0, t[0] + 1.0}; }
    std::vector<double> breakpoints(ParamView t) const override { return {t[0]}; }
    std::vector<double> singular_points(ParamView t) const override { return {t[0]}; }
    bool translation_even() const override { return true; }
    RadiusRule1D default_radius_rule_1d() const override { return RadiusRule1D::parametric; }
};

// ---------------------------------------------------------------- 2-D models

class Gauss2d final : public ParametricModel {
public:
    explicit Gauss2d(const ParameterRect& r) : ParametricModel("gauss-2d", r, make_constants(r)) {}

    static Point lower_on(const ParameterRect& c)
    {
        double w = c.width(0);
        double slo = c.lower[1], shi = c.upper[1];
        double rho = std::sqrt(2.0 * shi * slo / (shi * shi + slo * slo));
        return {rho * -std::expm1(-w * w / (8.0 * shi * shi)) / (w * w), 1.0 / (4.0 * shi * shi)};
    }

    static RegularityConstants make_constants(const ParameterRect& r)
    {
        double smin = r.lower[1];
        return {{2.0, 2.0}, lower_on(r), {1.0 / (4.0 * smin * smin), 1.0 / (2.0 * smin * smin)}};
    }

    double density(ParamView t, double x) const override
    {
        double z = (x - t[0]) / t[1];
        return kInvSqrt2Pi / t[1] * std::exp(-0.5 * z * z);
    }
    void density_batch(ParamView t, std::span<const double> xs, std::span<double> out) const override
    {
        const double m = t[0], inv = 1.0 / t[1], c = kInvSqrt2Pi / t[1];
        for (std::size_t i = 0; i < xs.size(); ++i) {
            double z = (xs[i] - m) * inv;
            out[i] = c * std::exp(-0.5 * z * z);
        }
    }
    double log_density(ParamView t, double x) const override
    {
        double z = (x - t[0]) / t[1];
        return -0.5 * z * z - std::log(t[1]) - kLogSqrt2Pi;
    }
    std::optional<double> cdf(ParamView t, double x) const override
    {
        return 0.5 * std::erfc(-(x - t[0]) / (t[1] * std::numbers::sqrt2));
    }
    double draw(ParamView t, Rng& rng) const override { return t[0] + t[1] * rng.normal(); }
    Support support(ParamView) const override { return {-kInf, kInf}; }
    std::vector<double> breakpoints(ParamView t) const override
    {
        double m = t[0], s = t[1];
        return {m - 8.0 * s, m - 3.0 * s, m, m + 3.0 * s, m + 8.0 * s};
    }
    std::optional<double> closed_hellinger(ParamView a, ParamView b) const override
    {
        return gauss_h2(a[0], a[1], b[0], b[1]);
    }
    std::optional<Point> closed_mle(std::span<const double> xs) const override
    {
        double m = mean_of(xs);
        double v = 0.0;
        for (double x : xs)
            v += (x - m) * (x - m);
        v /= static_cast<double>(xs.size());
        return clamp_point({m, std::sqrt(v)}, theta_rect());
    }
    bool integral_term_vanishes(ParamView a, ParamView b) const override { return a[1] == b[1]; }
    std::optional<RadiusBox> annexe_box(ParamView t, double xi, const ParameterRect&) const override
    {
        double s = t[1];
        double q = std::sqrt(2.0 * xi - xi * xi);
        double rm = 2.0 * (1.0 - q) / (1.0 - xi) * std::sqrt(-std::log1p(-xi)) * s;
        return RadiusBox{{rm, (q - xi) / (1.0 - xi) * s}, {rm, (q + xi) / (1.0 - xi) * s}};
    }
    Point per_rectangle_lower(const ParameterRect& c) const override { return lower_on(c); }
};

class Cauchy2d final : public ParametricModel {
public:
    Cauchy2d()
        : ParametricModel("cauchy-2d", {{-5.0, 0.2}, {5.0, 5.0}}, {{2.0, 2.0}, {0.0016, 0.0024}, {6.25, 6.25}})
    {
    }

    double density(ParamView t, double x) const override
    {
        double z = x - t[0];
        return t[1] / (std::numbers::pi * (z * z + t[1] * t[1]));
    }
    void density_batch(ParamView t, std::span<const double> xs, std::span<double> out) const override
    {
        const double m = t[0], s = t[1], s2 = t[1] * t[1];
        for (std::size_t i = 0; i < xs.size(); ++i) {
            double z = xs[i] - m;
            out[i] = s / (std::numbers::pi * (z * z + s2));
        }
    }
    double log_density(ParamView t, double x) const override
    {
        double z = (x - t[0]) / t[1];
        return -std::log(std::numbers::pi * t[1]) - std::log1p(z * z);
    }
    std::optional<double> cdf(ParamView t, double x) const override
    {
        return 0.5 + std::atan((x - t[0]) / t[1]) / std::numbers::pi;
    }
    double draw(ParamView t, Rng& rng) const override
    {
        return t[0] + t[1] * std::tan(std::numbers::pi * (rng.uniform_open() - 0.5));
    }
    Support support(ParamView) const override { return {-kInf, kInf}; }
    std::vector<double> breakpoints(ParamView t) const override
    {
        double m = t[0], s = t[1];
        return {m - 20.0 * s, m - 3.0 * s, m - s, m, m + s, m + 3.0 * s, m + 20.0 * s};
    }
    bool integral_term_vanishes(ParamView a, ParamView b) const override { return a[1] == b[1]; }
    std::optional<RadiusBox> annexe_box(ParamView t, double xi, const ParameterRect&) const override
    {
        double s = t[1], rx = std::sqrt(xi);
        double rm = 2.0 * s * rx;
        return RadiusBox{{rm, -s * std::expm1(-2.0 * rx)}, {rm, s * std::expm1(2.0 * rx)}};
    }
};

class Gamma2d final : public ParametricModel {
public:
    Gamma2d()
        : ParametricModel("gamma-2d", {{0.6, 0.1}, {10.0, 20.0}},
                          {{2.0, 2.0}, {5.8e-4, 9.1e-5}, {trigamma(0.6) / 2.0, 500.0}})
    {
    }

    double density(ParamView t, double x) const override
    {
        if (x <= 0.0)
            return 0.0;
        double a = t[0], b = t[1];
        return std::exp(a * std::log(b) + (a - 1.0) * std::log(x) - b * x - log_gamma(a));
    }
    void density_batch(ParamView t, std::span<const double> xs, std::span<double> out) const override
    {
        const double a = t[0], b = t[1];
        const double c = a * std::log(b) - log_gamma(a);
        for (std::size_t i = 0; i < xs.size(); ++i) {
            double x = xs[i];
            out[i] = x <= 0.0 ? 0.0 : std::exp(c + (a - 1.0) * std::log(x) - b * x);
        }
    }
    std::function<double(double)> bind_density(ParamView t) const override
    {
        const double a = t[0], b = t[1];
        const double c = a * std::log(b) - log_gamma(a);
        return [a, b, c](double x) { return x <= 0.0 ? 0.0 : std::exp(c + (a - 1.0) * std::log(x) - b * x); };
    }
    double log_density(ParamView t, double x) const override
    {
        if (x <= 0.0)
            return -kInf;
        double a = t[0], b = t[1];
        return a * std::log(b) + (a - 1.0) * std::log(x) - b * x - log_gamma(a);
    }
    std::optional<double> cdf(ParamView t, double x) const override
    {
        return x <= 0.0 ? 0.0 : boost::math::gamma_p(t[0], t[1] * x);
    }
    double draw(ParamView t, Rng& rng) const override { return rng.gamma(t[0]) / t[1]; }
    Support support(ParamView) const override { return {0.0, kInf}; }
    std::vector<double> breakpoints(ParamView t) const override
    {
        double a = t[0], b = t[1];
        double mean = a / b, sd = std::sqrt(a) / b;
        std::vector<double> out{mean / 10.0, mean, mean + 2.0 * sd, mean + 6.0 * sd, mean + 15.0 * sd};
        if (mean - 2.0 * sd > 0.0)
            out.push_back(mean - 2.0 * sd);
        return out;
    }
    std::vector<double> singular_points(ParamView t) const override
    {
        if (t[0] < 1.0)
            return {0.0};
        return {};
    }
    std::optional<double> closed_hellinger(ParamView p, ParamView q) const override
    {
        double a = p[0], b = p[1], ap = q[0], bp = q[1];
        double am = 0.5 * (a + ap);
        double la = log_gamma(am) + 0.5 * a * std::log(b) + 0.5 * ap * std::log(bp) -
                    0.5 * (log_gamma(a) + log_gamma(ap)) - am * std::log(0.5 * (b + bp));
        return std::max(0.0, -std::expm1(la));
    }
    std::optional<RadiusBox> annexe_box(ParamView t, double xi, const ParameterRect& c) const override
    {
        double a = t[0], b = t[1];
        double ra_up = std::sqrt(2.0 * xi / trigamma(a));
        double ra_down = std::sqrt(2.0 * xi / trigamma(c.lower[0]));
        // xi' = (1 - xi/4)^(1/a); s = sqrt(1 - xi'^2)
        double lxp = std::log1p(-xi / 4.0) / a;
        double xp2 = std::exp(2.0 * lxp);
        double s = std::sqrt(-std::expm1(2.0 * lxp));
        double rb_down = 2.0 * b * s * (1.0 - s) / xp2;
        double rb_up = 2.0 * b * s * (1.0 + s) / xp2;
        return RadiusBox{{ra_down, rb_down}, {ra_up, rb_up}};
    }
};

class Beta2d final : public ParametricModel {
public:
    Beta2d()
        : ParametricModel("beta-2d", {{0.7, 0.7}, {20.0, 20.0}},
                          {{2.0, 2.0}, {1e-4, 1e-4}, {trigamma(0.7) / 2.0, trigamma(0.7) / 2.0}})
    {
    }

    double density(ParamView t, double x) const override
    {
        if (x <= 0.0 || x >= 1.0)
            return 0.0;
        double a = t[0], b = t[1];
        return std::exp((a - 1.0) * std::log(x) + (b - 1.0) * std::log1p(-x) - log_beta(a, b));
    }
    void density_batch(ParamView t, std::span<const double> xs, std::span<double> out) const override
    {
        const double a = t[0], b = t[1], lb = log_beta(a, b);
        for (std::size_t i = 0; i < xs.size(); ++i) {
            double x = xs[i];
            out[i] = x <= 0.0 || x >= 1.0 ? 0.0
                                          : std::exp((a - 1.0) * std::log(x) + (b - 1.0) * std::log1p(-x) - lb);
        }
    }
    std::function<double(double)> bind_density(ParamView t) const override
    {
        const double a = t[0], b = t[1], lb = log_beta(a, b);
        return [a, b, lb](double x) {
            return x <= 0.0 || x >= 1.0 ? 0.0 : std::exp((a - 1.0) * std::log(x) + (b - 1.0) * std::log1p(-x) - lb);
        };
    }
    double log_density(ParamView t, double x) const override
    {
        if (x <= 0.0 || x >= 1.0)
            return -kInf;
        double a = t[0], b = t[1];
        return (a - 1.0) * std::log(x) + (b - 1.0) * std::log1p(-x) - log_beta(a, b);
    }
    std::optional<double> cdf(ParamView t, double x) const override
    {
        if (x <= 0.0)
            return 0.0;
        if (x >= 1.0)
            return 1.0;
        return boost::math::ibeta(t[0], t[1], x);
    }
    double draw(ParamView t, Rng& rng) const override { return rng.beta(t[0], t[1]); }
    Support support(ParamView) const override { return {0.0, 1.0}; }
    std::vector<double> breakpoints(ParamView t) const override
    {
        double a = t[0], b = t[1];
        double mean = a / (a + b);
        double sd = std::sqrt(a * b / ((a + b) * (a + b) * (a + b + 1.0)));
        std::vector<double> out{mean};
        for (double k : {-6.0, -2.0, 2.0, 6.0}) {
            double x = mean + k * sd;
            if (x > 0.0 && x < 1.0)
                out.push_back(x);
        }
        return out;
    }
    std::vector<double> singular_points(ParamView t) const override
    {
        std::vector<double> out;
        if (t[0] < 1.0)
            out.push_back(0.0);
        if (t[1] < 1.0)
            out.push_back(1.0);
        return out;
    }
    std::optional<double> closed_hellinger(ParamView p, ParamView q) const override
    {
        double la = log_beta(0.5 * (p[0] + q[0]), 0.5 * (p[1] + q[1])) -
                    0.5 * (log_beta(p[0], p[1]) + log_beta(q[0], q[1]));
        return std::max(0.0, -std::expm1(la));
    }
    std::optional<RadiusBox> annexe_box(ParamView t, double xi, const ParameterRect& c) const override
    {
        double a = t[0], b = t[1];
        double a1 = c.lower[0], b1 = c.lower[1], b2 = c.upper[1];
        double ra_down = std::sqrt(2.0 * xi / (trigamma(a1) - trigamma(a1 + b2)));
        double ra_up = std::sqrt(2.0 * xi / (trigamma(a) - trigamma(a + b2)));
        double rb_down = std::sqrt(2.0 * xi / (trigamma(b1) - trigamma(a + b1)));
        double rb_up = std::sqrt(2.0 * xi / (trigamma(b) - trigamma(a + b)));
        return RadiusBox{{ra_down, rb_down}, {ra_up, rb_up}};
    }
};

class ShiftExp2d final : public ParametricModel {
public:
    ShiftExp2d() : ParametricModel("shiftexp-2d", rect(), {{1.0, 2.0}, lower_on(rect()), {5.0, 6.25}}) {}

    static ParameterRect rect() { return {{-1.0, 0.2}, {1.0, 5.0}}; }
    static Point lower_on(const ParameterRect& c)
    {
        double w = c.width(0);
        double llo = c.lower[1], lhi = c.upper[1];
        double rho = 2.0 * std::sqrt(lhi * llo) / (lhi + llo);
        return {rho * -std::expm1(-llo * w / 2.0) / w, 1.0 / (8.0 * lhi * lhi)};
    }

    double density(ParamView t, double x) const override
    {
        return x < t[0] ? 0.0 : t[1] * std::exp(-t[1] * (x - t[0]));
    }
    void density_batch(ParamView t, std::span<const double> xs, std::span<double> out) const override
    {
        const double m = t[0], l = t[1];
        for (std::size_t i = 0; i < xs.size(); ++i)
            out[i] = xs[i] < m ? 0.0 : l * std::exp(-l * (xs[i] - m));
    }
    double log_density(ParamView t, double x) const override
    {
        return x < t[0] ? -kInf : std::log(t[1]) - t[1] * (x - t[0]);
    }
    std::optional<double> cdf(ParamView t, double x) const override
    {
        return x <= t[0] ? 0.0 : -std::expm1(-t[1] * (x - t[0]));
    }
    double draw(ParamView t, Rng& rng) const override { return t[0] - std::log1p(-rng.uniform()) / t[1]; }
    Support support(ParamView t) const override { return {t[0], kInf}; }
    std::vector<double> breakpoints(ParamView t) const override
    {
        double m = t[0], l = t[1];
        return {m + 1.0 / l, m + 4.0 / l, m + 16.0 / l, m + 64.0 / l};
    }
    std::optional<double> closed_hellinger(ParamView a, ParamView b) const override
    {
        double m = a[0], l = a[1], mp = b[0], lp = b[1];
        double one_minus_rho = rate_h2(l, lp);
        double rate = mp >= m ? l : lp;
        double one_minus_e = -std::expm1(-0.5 * rate * std::abs(mp - m));
        return one_minus_rho + (1.0 - one_minus_rho) * one_minus_e;
    }
    std::optional<Point> closed_mle(std::span<const double> xs) const override
    {
        double mn = *std::min_element(xs.begin(), xs.end());
        double gap = mean_of(xs) - mn;
        double l = gap > 0.0 ? 1.0 / gap : theta_rect().upper[1];
        return clamp_point({mn, l}, theta_rect());
    }
    std::optional<RadiusBox> annexe_box(ParamView t, double xi, const ParameterRect&) const override
    {
        double l = t[1];
        double rx = std::sqrt(xi);
        double lg = -std::log1p(-xi);
        double m_down = (1.0 - xi) / (1.0 + xi + 2.0 * rx) * lg / l;
        double m_up = lg / l;
        double l_down = 2.0 * l * rx * (1.0 - rx) / (1.0 - xi);
        double l_up = 2.0 * l * rx * (1.0 + rx) / (1.0 - xi);
        return RadiusBox{{m_down, l_down}, {m_up, l_up}};
    }
    Point per_rectangle_lower(const ParameterRect& c) const override { return lower_on(c); }
};

class UnifLocScale2d final : public ParametricModel {
public:
    UnifLocScale2d()
        : ParametricModel("unif-locscale-2d", {{-0.5, 0.1}, {0.5, 2.0}}, {{1.0, 1.0}, {0.24, 0.24}, {20.0, 10.0}})
    {
    }

    double density(ParamView t, double x) const override
    {
        return x >= t[0] && x <= t[0] + t[1] ? 1.0 / t[1] : 0.0;
    }
    void density_batch(ParamView t, std::span<const double> xs, std::span<double> out) const override
    {
        const double lo = t[0], hi = t[0] + t[1], v = 1.0 / t[1];
        for (std::size_t i = 0; i < xs.size(); ++i)
            out[i] = xs[i] >= lo && xs[i] <= hi ? v : 0.0;
    }
    std::optional<double> cdf(ParamView t, double x) const override
    {
        return clamp_to((x - t[0]) / t[1], 0.0, 1.0);
    }
    double draw(ParamView t, Rng& rng) const override { return t[0] + t[1] * rng.uniform(); }
    Support support(ParamView t) const override { return {t[0], t[0] + t[1]}; }
    std::optional<double> closed_hellinger(ParamView a, ParamView b) const override
    {
        return uniform_pair_h2(a[0], a[1], b[0], b[1]);
    }
    std::optional<Point> closed_mle(std::span<const double> xs) const override
    {
        auto [mn, mx] = std::minmax_element(xs.begin(), xs.end());
        return clamp_point({*mn, *mx - *mn}, theta_rect());
    }
    std::optional<double> closed_integral_term(ParamView a, ParamView b) const override
    {
        return uniform_pair_integral(a[0], a[1], b[0], b[1]);
    }
    // The lower m-radius is (xi/2)(1 - xi/2) r: at the corner r' = (1-xi/2)^2 r
    // the case m' <= m, m'+r' <= m+r needs m - m' <= (sqrt r' - (1-xi) sqrt r) sqrt r'.
    std::optional<RadiusBox> annexe_box(ParamView t, double xi, const ParameterRect&) const override
    {
        double r = t[1];
        double h = 1.0 - 0.5 * xi;
        return RadiusBox{{0.5 * xi * h * r, r * (1.0 - h * h)}, {xi / (2.0 - xi) * r, r * (1.0 / (h * h) - 1.0)}};
    }
};

}  // namespace

const std::vector<std::string>& catalog_names()
{
    static const std::vector<std::string> names{
        "exp-rate", "gauss-loc", "rayleigh", "cauchy-loc", "unif-scale", "pareto-shift", "unif-loc",
        "sqrt-singular", "gauss-2d", "cauchy-2d", "gamma-2d", "beta-2d", "shiftexp-2d", "unif-locscale-2d"};
    return names;
}

ModelPtr catalog_lookup(std::string_view name)
{
    static const std::map<std::string, ModelPtr, std::less<>> table = [] {
        std::map<std::string, ModelPtr, std::less<>> t;
        t["exp-rate"] = std::make_shared<ExpRate>();
        t["gauss-loc"] = std::make_shared<GaussLoc>();
        t["rayleigh"] = std::make_shared<Rayleigh>();
        t["cauchy-loc"] = std::make_shared<CauchyLoc>();
        t["unif-scale"] = std::make_shared<UnifScale>();
        t["pareto-shift"] = std::make_shared<ParetoShift>();
        t["unif-loc"] = std::make_shared<UnifLoc>();
        t["sqrt-singular"] = std::make_shared<SqrtSingular>();
        t["gauss-2d"] = std::make_shared<Gauss2d>(ParameterRect{{-5.0, 0.2}, {5.0, 5.0}});
        t["cauchy-2d"] = std::make_shared<Cauchy2d>();
        t["gamma-2d"] = std::make_shared<Gamma2d>();
        t["beta-2d"] = std::make_shared<Beta2d>();
        t["shiftexp-2d"] = std::make_shared<ShiftExp2d>();
        t["unif-locscale-2d"] = std::make_shared<UnifLocScale2d>();
        return t;
    }();
    auto it = table.find(name);
    if (it == table.end())
        throw Error(ErrorKind::unknown_name, "no catalog model named '" + std::string(name) + "'");
    return it->second;
}

ModelPtr make_gauss2d(const ParameterRect& rect)
{
    rect.validate();
    if (rect.dim() != 2 || !(rect.lower[1] > 0.0))
        throw Error(ErrorKind::invalid_config, "gaussian location-scale rectangle needs d = 2 and sigma > 0");
    return std::make_shared<Gauss2d>(rect);
}

}  // namespace robustdens
