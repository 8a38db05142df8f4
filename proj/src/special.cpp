#include "robustdens/special.hpp"

#include "robustdens/error.hpp"

#include <boost/math/special_functions/gamma.hpp>

#include <cmath>
#include <string>

namespace robustdens {

double trigamma(double x)
{
    if (!(x > 0.0) || !std::isfinite(x))
        throw Error(ErrorKind::domain_error, "trigamma requires x > 0, got " + std::to_string(x));
    double acc = 0.0;
    while (x < 10.0) {
        acc += 1.0 / (x * x);
        x += 1.0;
    }
    const double z = 1.0 / x;
    const double z2 = z * z;
    // B2/x^3 + B4/x^5 + ... up to B14
    double series = z2 * (7.0 / 6.0);
    series = z2 * (-691.0 / 2730.0 + series);
    series = z2 * (5.0 / 66.0 + series);
    series = z2 * (-1.0 / 30.0 + series);
    series = z2 * (1.0 / 42.0 + series);
    series = z2 * (-1.0 / 30.0 + series);
    series = z2 * (1.0 / 6.0 + series);
    return acc + z + 0.5 * z2 + z * series;
}

double log_gamma(double x)
{
    return boost::math::lgamma(x);
}

double log_beta(double a, double b)
{
    return log_gamma(a) + log_gamma(b) - log_gamma(a + b);
}

}  // namespace robustdens
