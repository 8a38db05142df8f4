#pragma once

#include <functional>
#include <vector>

namespace robustdens {

struct QuadratureSpec {
    double abs_tol = 1e-10;
    double rel_tol = 1e-10;
    int max_subdivisions = 20000;
};

struct QuadratureResult {
    double value = 0.0;
    double abs_error = 0.0;
    int intervals = 0;
};

using Integrand = std::function<double(double)>;

// Global adaptive bisection with the 7/15 Gauss-Kronrod pair.
//
// [lo, hi] may be unbounded: half-lines use x = a + t/(1-t), the real line is
// split at the breakpoints first. Points listed in `singular` are integrable
// endpoint singularities; the adjacent pieces are substituted with x = p + u^2
// so the rule never sees the blow-up. Non-finite integrand values (a node that
// rounds onto a singular point) are treated as 0.
//
// Throws Error(quadrature_nonconvergence) if the tolerance
// max(abs_tol, rel_tol*|I|) is not met within max_subdivisions bisections.
QuadratureResult integrate(const Integrand& f, double lo, double hi,
                           const std::vector<double>& breakpoints,
                           const std::vector<double>& singular,
                           const QuadratureSpec& spec);

inline QuadratureResult integrate(const Integrand& f, double lo, double hi, const QuadratureSpec& spec)
{
    return integrate(f, lo, hi, {}, {}, spec);
}

}  // namespace robustdens
