#include "robustdens/distance.hpp"

#include "robustdens/error.hpp"

#include <algorithm>
#include <cmath>

namespace robustdens {

namespace {

void append(std::vector<double>& dst, const std::vector<double>& src)
{
    dst.insert(dst.end(), src.begin(), src.end());
}

}  // namespace

double hellinger_sq_quadrature(const ParametricModel& model, ParamView a, ParamView b, const QuadratureSpec& quad)
{
    Support sa = model.support(a), sb = model.support(b);
    double lo = std::min(sa.lo, sb.lo), hi = std::max(sa.hi, sb.hi);

    std::vector<double> cuts{sa.lo, sa.hi, sb.lo, sb.hi};
    append(cuts, model.breakpoints(a));
    append(cuts, model.breakpoints(b));
    std::vector<double> sing = model.singular_points(a);
    append(sing, model.singular_points(b));
    append(cuts, sing);

    auto fa = model.bind_density(a), fb = model.bind_density(b);
    auto integrand = [&](double x) {
        double d = std::sqrt(fa(x)) - std::sqrt(fb(x));
        return 0.5 * d * d;
    };
    double v = integrate(integrand, lo, hi, cuts, sing, quad).value;
    return std::clamp(v, 0.0, 1.0);
}

double hellinger_sq(const ParametricModel& model, ParamView a, ParamView b, const QuadratureSpec& quad)
{
    if (std::equal(a.begin(), a.end(), b.begin(), b.end()))
        return 0.0;
    if (auto c = model.closed_hellinger(a, b))
        return std::clamp(*c, 0.0, 1.0);
    return hellinger_sq_quadrature(model, a, b, quad);
}

std::optional<double> hellinger_affinity_closed(std::string_view name, ParamView a, ParamView b)
{
    return catalog_lookup(name)->closed_hellinger(a, b);
}

double hellinger_sq_external(const ExternalDensity& s, const ParametricModel& model, ParamView theta,
                             const QuadratureSpec& quad)
{
    Support st = model.support(theta);
    double lo = std::min(s.lo, st.lo), hi = std::max(s.hi, st.hi);

    std::vector<double> cuts{s.lo, s.hi, st.lo, st.hi};
    append(cuts, s.breakpoints);
    append(cuts, model.breakpoints(theta));
    std::vector<double> sing = s.singular;
    append(sing, model.singular_points(theta));
    append(cuts, sing);

    auto ft = model.bind_density(theta);
    auto integrand = [&](double x) {
        double d = std::sqrt(s.density(x)) - std::sqrt(ft(x));
        return 0.5 * d * d;
    };
    double v = integrate(integrand, lo, hi, cuts, sing, quad).value;
    return std::clamp(v, 0.0, 1.0);
}

}  // namespace robustdens
