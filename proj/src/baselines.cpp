#include "robustdens/baselines.hpp"

#include "robustdens/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace robustdens {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double clamp1(const ParametricModel& model, double v)
{
    const auto& r = model.theta_rect();
    return std::clamp(v, r.lower[0], r.upper[0]);
}

void require_1d(const ParametricModel& model, const char* what)
{
    if (model.dim() != 1)
        throw Error(ErrorKind::unsupported_model, std::string(what) + " needs a one-dimensional model, got " +
                                                      model.name());
}

void require_sample(std::span<const double> xs)
{
    if (xs.empty())
        throw Error(ErrorKind::invalid_config, "sample must hold at least one observation");
}

}  // namespace

const char* to_string(BaselineKind k)
{
    switch (k) {
    case BaselineKind::mle_closed: return "mle";
    case BaselineKind::mle_grid: return "mle_grid";
    case BaselineKind::mspe: return "mspe";
    case BaselineKind::median: return "median";
    case BaselineKind::mean: return "mean";
    case BaselineKind::mvub: return "mvub";
    case BaselineKind::midrange: return "midrange";
    }
    return "?";
}

BaselineKind parse_baseline_kind(std::string_view s)
{
    if (s == "mle" || s == "mle_closed")
        return BaselineKind::mle_closed;
    if (s == "mle_grid" || s == "mle-grid")
        return BaselineKind::mle_grid;
    if (s == "mspe")
        return BaselineKind::mspe;
    if (s == "median")
        return BaselineKind::median;
    if (s == "mean")
        return BaselineKind::mean;
    if (s == "mvub")
        return BaselineKind::mvub;
    if (s == "midrange")
        return BaselineKind::midrange;
    throw Error(ErrorKind::invalid_config, "unknown estimator '" + std::string(s) + "'");
}

double log_likelihood(const ParametricModel& model, ParamView theta, std::span<const double> xs)
{
    double s = 0.0;
    for (double x : xs) {
        s += model.log_density(theta, x);
        if (s == kNegInf)
            return s;
    }
    return s;
}

Point mle_closed(const ParametricModel& model, std::span<const double> xs)
{
    require_sample(xs);
    auto m = model.closed_mle(xs);
    if (!m)
        throw Error(ErrorKind::unsupported_model, "model " + model.name() + " has no closed-form likelihood maximizer");
    return *m;
}

Point mle_grid(const ParametricModel& model, std::span<const double> xs, std::size_t grid_points,
               const std::vector<double>& anchors)
{
    require_1d(model, "grid likelihood search");
    require_sample(xs);
    if (grid_points < 2)
        throw Error(ErrorKind::invalid_config, "grid likelihood search needs at least 2 points");
    const auto& r = model.theta_rect();
    double best = kNegInf, arg = std::numeric_limits<double>::quiet_NaN();
    for (double c : anchors) {
        double lo = std::max(r.lower[0], c - 1.0), hi = std::min(r.upper[0], c + 1.0);
        if (!(hi >= lo))
            continue;
        double step = (hi - lo) / static_cast<double>(grid_points - 1);
        for (std::size_t i = 0; i < grid_points; ++i) {
            double th = i + 1 == grid_points ? hi : lo + step * static_cast<double>(i);
            const double t[1] = {th};
            double ll = log_likelihood(model, t, xs);
            if (std::isnan(arg) || ll > best || (ll == best && th < arg)) {
                best = ll;
                arg = th;
            }
        }
    }
    if (std::isnan(arg))
        throw Error(ErrorKind::invalid_config, "grid likelihood search needs at least one anchor");
    return {arg};
}

Point zoom_argmax(const std::function<double(ParamView)>& f, const ParameterRect& rect,
                  const std::vector<Point>& anchors, std::size_t coarse, std::size_t fine, double rel_tol)
{
    const std::size_t d = rect.dim();
    coarse = std::max<std::size_t>(coarse, 2);
    fine = std::max<std::size_t>(fine, 3);

    // evaluates a regular grid on [lo, hi] with g points per axis; updates the incumbent
    auto scan = [&](const Point& lo, const Point& hi, std::size_t g, Point& best_x, double& best_v) {
        std::size_t total = 1;
        for (std::size_t j = 0; j < d; ++j)
            total *= g;
        Point x(d);
        for (std::size_t idx = 0; idx < total; ++idx) {
            std::size_t r = idx;
            for (std::size_t j = 0; j < d; ++j) {
                std::size_t k = r % g;
                r /= g;
                x[j] = k + 1 == g ? hi[j] : lo[j] + (hi[j] - lo[j]) * static_cast<double>(k) / (g - 1);
            }
            double v = f(x);
            if (v > best_v) {
                best_v = v;
                best_x = x;
            }
        }
    };

    auto refine = [&](Point x, double v, Point half) {
        // half: current half-width of the search window per axis
        for (int it = 0; it < 200; ++it) {
            bool done = true;
            for (std::size_t j = 0; j < d; ++j)
                if (half[j] > rel_tol * rect.width(j))
                    done = false;
            if (done)
                break;
            Point lo(d), hi(d);
            for (std::size_t j = 0; j < d; ++j) {
                lo[j] = std::max(rect.lower[j], x[j] - half[j]);
                hi[j] = std::min(rect.upper[j], x[j] + half[j]);
            }
            scan(lo, hi, fine, x, v);
            for (std::size_t j = 0; j < d; ++j)
                half[j] = 2.0 * (2.0 * half[j] / static_cast<double>(fine - 1));
        }
        return std::pair{x, v};
    };

    Point bx = rect.lower;
    double bv = kNegInf;
    scan(rect.lower, rect.upper, coarse, bx, bv);
    Point half0(d);
    for (std::size_t j = 0; j < d; ++j)
        half0[j] = 2.0 * rect.width(j) / static_cast<double>(coarse - 1);
    auto best = refine(bx, bv, half0);
    for (const auto& a : anchors) {
        Point p = a;
        for (std::size_t j = 0; j < d; ++j)
            p[j] = std::clamp(p[j], rect.lower[j], rect.upper[j]);
        auto cand = refine(p, f(p), half0);
        if (cand.second > best.second)
            best = cand;
    }
    return best.first;
}

Point mle_grid_md(const ParametricModel& model, std::span<const double> xs, const std::vector<Point>& anchors)
{
    require_sample(xs);
    auto ll = [&](ParamView t) { return log_likelihood(model, t, xs); };
    return zoom_argmax(ll, model.theta_rect(), anchors);
}

Point mspe(const ParametricModel& model, std::span<const double> xs, std::size_t grid_points)
{
    require_1d(model, "maximum spacing estimation");
    if (xs.size() < 2)
        throw Error(ErrorKind::invalid_config, "maximum spacing estimation needs n >= 2");
    if (grid_points < 2)
        throw Error(ErrorKind::invalid_config, "maximum spacing estimation needs at least 2 grid points");
    const auto& r = model.theta_rect();
    {
        const double c[1] = {r.lower[0]};
        if (!model.cdf(c, xs[0]))
            throw Error(ErrorKind::cdf_missing, "model " + model.name() + " has no distribution function");
    }
    std::vector<double> sorted(xs.begin(), xs.end());
    std::sort(sorted.begin(), sorted.end());

    double best = kNegInf, arg = r.center()[0];
    const double step = r.width(0) / static_cast<double>(grid_points - 1);
    for (std::size_t i = 0; i < grid_points; ++i) {
        double th = i + 1 == grid_points ? r.upper[0] : r.lower[0] + step * static_cast<double>(i);
        const double t[1] = {th};
        double prev = 0.0, obj = 0.0;
        for (double x : sorted) {
            double F = *model.cdf(t, x);
            double sp = F - prev;
            if (!(sp > 0.0)) {
                obj = kNegInf;
                break;
            }
            obj += std::log(sp);
            prev = F;
        }
        if (obj != kNegInf) {
            double sp = 1.0 - prev;
            obj = sp > 0.0 ? obj + std::log(sp) : kNegInf;
        }
        if (obj > best) {
            best = obj;
            arg = th;
        }
    }
    return {arg};
}

Point simple_stats(const ParametricModel& model, std::span<const double> xs, BaselineKind kind)
{
    require_1d(model, "summary-statistic estimators");
    require_sample(xs);
    const double n = static_cast<double>(xs.size());
    switch (kind) {
    case BaselineKind::median: {
        std::vector<double> v(xs.begin(), xs.end());
        auto mid = v.begin() + static_cast<std::ptrdiff_t>((v.size() - 1) / 2);
        std::nth_element(v.begin(), mid, v.end());
        return {clamp1(model, *mid)};
    }
    case BaselineKind::mean: {
        double s = 0.0;
        for (double x : xs)
            s += x;
        return {clamp1(model, s / n)};
    }
    case BaselineKind::mvub:
        return {clamp1(model, (n + 1.0) / n * *std::max_element(xs.begin(), xs.end()))};
    case BaselineKind::midrange: {
        auto [mn, mx] = std::minmax_element(xs.begin(), xs.end());
        return {clamp1(model, 0.5 * (*mn + *mx))};
    }
    default:
        throw Error(ErrorKind::invalid_config, std::string("not a summary statistic: ") + to_string(kind));
    }
}

}  // namespace robustdens
