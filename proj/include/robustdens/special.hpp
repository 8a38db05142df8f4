#pragma once

namespace robustdens {

// Derivative of the digamma function, x > 0. Upward recurrence to x >= 10
// followed by the asymptotic Bernoulli series; about 1e-14 relative accuracy.
double trigamma(double x);

// log Gamma for x > 0 (thread-safe, no signgam side effect)
double log_gamma(double x);

double log_beta(double a, double b);

}  // namespace robustdens
