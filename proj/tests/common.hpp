#pragma once

#include "robustdens/models.hpp"
#include "robustdens/rng.hpp"

namespace robustdens::testutil {

inline Point random_theta(const ParametricModel& m, Rng& rng)
{
    const auto& r = m.theta_rect();
    Point p(m.dim());
    for (std::size_t j = 0; j < p.size(); ++j)
        p[j] = r.lower[j] + r.width(j) * rng.uniform();
    return p;
}

// random point within a small relative neighbourhood of `a`, kept inside Theta
inline Point near_theta(const ParametricModel& m, const Point& a, double rel, Rng& rng)
{
    const auto& r = m.theta_rect();
    Point p(a);
    for (std::size_t j = 0; j < p.size(); ++j) {
        p[j] += rel * r.width(j) * (2.0 * rng.uniform() - 1.0);
        p[j] = std::min(std::max(p[j], r.lower[j]), r.upper[j]);
    }
    return p;
}

}  // namespace robustdens::testutil
