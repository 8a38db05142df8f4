#include "robustdens/truth.hpp"

#include "robustdens/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace robustdens {

namespace {

constexpr double kInvSqrt2Pi = 0.398942280401432677939946059934;

// block densities on [0,0.1] and [0.9,1] for the contaminated truth
std::pair<double, double> contam_levels(std::size_t n)
{
    double w = 2.0 / static_cast<double>(n);
    return {10.0 * (1.0 - w), 10.0 * w};
}

void require_unif_scale(const ParametricModel& model, const Truth& truth)
{
    if (model.name() != "unif-scale")
        throw Error(ErrorKind::unsupported_model,
                    std::string(to_string(truth.kind)) + " truth is defined against the unif-scale model");
}

double gauss_pdf(double x, double m)
{
    double z = x - m;
    return kInvSqrt2Pi * std::exp(-0.5 * z * z);
}

}  // namespace

const char* to_string(TruthKind k)
{
    switch (k) {
    case TruthKind::in_model: return "in_model";
    case TruthKind::uniform_contaminated: return "uniform_contaminated";
    case TruthKind::uniform_mixture: return "uniform_mixture";
    case TruthKind::gaussian_mixture: return "gaussian_mixture";
    }
    return "?";
}

Sample draw_truth(const ParametricModel& model, const Truth& truth, std::size_t n, std::uint64_t seed)
{
    if (truth.kind == TruthKind::in_model)
        return draw_sample(model, truth.theta0, n, seed);
    if (n == 0)
        throw Error(ErrorKind::invalid_config, "sample size must be positive");
    Rng rng(seed);
    Sample s;
    s.values.resize(n);
    s.provenance = "seed=" + std::to_string(seed);
    const double w = 2.0 / static_cast<double>(n);
    for (auto& v : s.values) {
        switch (truth.kind) {
        case TruthKind::uniform_contaminated: {
            bool outlier = rng.uniform() < w;
            double u = rng.uniform();
            v = outlier ? 0.9 + 0.1 * u : 0.1 * u;
            break;
        }
        case TruthKind::uniform_mixture: {
            bool second = rng.uniform() < truth.p;
            v = (second ? 2.0 : 1.0) * rng.uniform();
            break;
        }
        case TruthKind::gaussian_mixture: {
            bool second = rng.uniform() < truth.p;
            v = (second ? 5.0 : -5.0) + rng.normal();
            break;
        }
        default:
            break;
        }
    }
    return s;
}

ExternalDensity truth_density(const Truth& truth, std::size_t n)
{
    ExternalDensity e;
    switch (truth.kind) {
    case TruthKind::uniform_contaminated: {
        auto [lo, hi] = contam_levels(n);
        e.density = [lo, hi](double x) {
            if (x >= 0.0 && x <= 0.1)
                return lo;
            if (x >= 0.9 && x <= 1.0)
                return hi;
            return 0.0;
        };
        e.lo = 0.0;
        e.hi = 1.0;
        e.breakpoints = {0.1, 0.9};
        break;
    }
    case TruthKind::uniform_mixture: {
        double p = truth.p;
        e.density = [p](double x) {
            if (x >= 0.0 && x <= 1.0)
                return 1.0 - 0.5 * p;
            if (x > 1.0 && x <= 2.0)
                return 0.5 * p;
            return 0.0;
        };
        e.lo = 0.0;
        e.hi = 2.0;
        e.breakpoints = {1.0};
        break;
    }
    case TruthKind::gaussian_mixture: {
        double p = truth.p;
        e.density = [p](double x) { return (1.0 - p) * gauss_pdf(x, -5.0) + p * gauss_pdf(x, 5.0); };
        e.lo = -std::numeric_limits<double>::infinity();
        e.hi = std::numeric_limits<double>::infinity();
        e.breakpoints = {-13.0, -8.0, -5.0, -2.0, 0.0, 2.0, 5.0, 8.0, 13.0};
        break;
    }
    case TruthKind::in_model:
        throw Error(ErrorKind::invalid_config, "in-model truth has no external density");
    }
    return e;
}

double truth_h2(const ParametricModel& model, const Truth& truth, std::size_t n, ParamView theta,
                const QuadratureSpec& quad)
{
    switch (truth.kind) {
    case TruthKind::in_model:
        return hellinger_sq(model, truth.theta0, theta, quad);
    case TruthKind::uniform_contaminated: {
        require_unif_scale(model, truth);
        auto [lo, hi] = contam_levels(n);
        double th = theta[0];
        double aff = (std::sqrt(lo) * std::min(th, 0.1) + std::sqrt(hi) * std::clamp(th - 0.9, 0.0, 0.1)) /
                     std::sqrt(th);
        return std::clamp(1.0 - aff, 0.0, 1.0);
    }
    case TruthKind::uniform_mixture: {
        require_unif_scale(model, truth);
        double p = truth.p, th = theta[0];
        double aff = (std::sqrt(1.0 - 0.5 * p) * std::min(th, 1.0) +
                      std::sqrt(0.5 * p) * std::clamp(th - 1.0, 0.0, 1.0)) /
                     std::sqrt(th);
        return std::clamp(1.0 - aff, 0.0, 1.0);
    }
    case TruthKind::gaussian_mixture:
        return hellinger_sq_external(truth_density(truth, n), model, theta, quad);
    }
    return 0.0;
}

}  // namespace robustdens
