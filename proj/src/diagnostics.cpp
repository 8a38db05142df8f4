#include "robustdens/diagnostics.hpp"

#include "robustdens/error.hpp"
#include "robustdens/search1d.hpp"
#include "robustdens/searchmd.hpp"

#include <cmath>
#include <limits>

namespace robustdens {

double harmonic_mean_alpha(const Point& alpha)
{
    if (alpha.empty())
        throw Error(ErrorKind::invalid_config, "alpha must have at least one entry");
    double s = 0.0;
    for (double a : alpha) {
        if (!(a > 0.0))
            throw Error(ErrorKind::invalid_config, "alpha entries must be positive");
        s += 1.0 / a;
    }
    return static_cast<double>(alpha.size()) / s;
}

namespace {

void require_theory_t(const Point& t, std::size_t d)
{
    if (t.size() != d)
        throw Error(ErrorKind::invalid_config, "t needs one entry per coordinate");
    for (double v : t)
        if (!(v > 0.0))
            throw Error(ErrorKind::theory_mode_required, "theory quantities need t_j > 0 in every coordinate");
}

}  // namespace

double dimension_df(const RegularityConstants& k, const Point& t, double c)
{
    const std::size_t d = k.alpha.size();
    require_theory_t(t, d);
    const double dd = static_cast<double>(d);
    const double abar = harmonic_mean_alpha(k.alpha);
    double s = 0.0;
    for (std::size_t j = 0; j < d; ++j)
        s += std::log1p(std::pow((dd / abar) * (c * k.r_upper[j] / k.r_lower[j]), 1.0 / k.alpha[j]) / t[j]);
    return std::max(dd, s);
}

double dimension_df_1d(double alpha, double r_lower, double r_upper, double t, double c)
{
    require_theory_t({t}, 1);
    return std::log1p(std::pow(c * r_upper / (alpha * r_lower), 1.0 / alpha) / t);
}

TheoryBundle compute_theory_bundle(const ParametricModel& model, const Point& t, double kappa, const Point& eta,
                                   double c)
{
    const std::size_t d = model.dim();
    require_theory_t(t, d);
    if (eta.size() != d)
        throw Error(ErrorKind::invalid_config, "eta needs one entry per coordinate");
    const auto& k = model.constants();
    TheoryBundle b;
    b.alpha_bar = harmonic_mean_alpha(k.alpha);
    b.d_f = dimension_df(k, t, c);
    b.bound_md = test_count_bound_md(model, kappa, eta);
    if (d == 1) {
        b.d_f_1d = dimension_df_1d(k.alpha[0], k.r_lower[0], k.r_upper[0], t[0], c);
        b.bound_1d = test_count_bound_1d(model, kappa, eta[0]);
    } else {
        b.d_f_1d = b.bound_1d = std::numeric_limits<double>::quiet_NaN();
    }
    return b;
}

}  // namespace robustdens
