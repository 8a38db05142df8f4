#include "robustdens/quadrature.hpp"

#include "robustdens/error.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <sstream>

namespace robustdens {

namespace {

using Kronrod = boost::math::quadrature::gauss_kronrod<double, 15>;
using Gauss = boost::math::quadrature::gauss<double, 7>;

// A piece of the domain expressed in a bounded variable u in [u0, u1].
// map(u) returns x and the Jacobian dx/du.
struct Piece {
    enum class Kind { plain, sqrt_left, sqrt_right, half_up, half_down };
    Kind kind = Kind::plain;
    double anchor = 0.0;  // a for sqrt_left/half_up, b for sqrt_right/half_down
};

struct Segment {
    int piece;
    double u0, u1;
    double value, error;
    bool operator<(const Segment& o) const { return error < o.error; }
};

inline double eval_mapped(const Integrand& f, const Piece& p, double u)
{
    double x, jac;
    switch (p.kind) {
    case Piece::Kind::plain:
        x = u;
        jac = 1.0;
        break;
    case Piece::Kind::sqrt_left:
        x = p.anchor + u * u;
        jac = 2.0 * u;
        break;
    case Piece::Kind::sqrt_right:
        x = p.anchor - u * u;
        jac = 2.0 * u;
        break;
    case Piece::Kind::half_up: {
        double s = 1.0 - u;
        x = p.anchor + u / s;
        jac = 1.0 / (s * s);
        break;
    }
    case Piece::Kind::half_down:
    default: {
        double s = 1.0 - u;
        x = p.anchor - u / s;
        jac = 1.0 / (s * s);
        break;
    }
    }
    if (!std::isfinite(x))
        return 0.0;
    double v = f(x) * jac;
    return std::isfinite(v) ? v : 0.0;
}

// QUADPACK qk15 error heuristic on top of Boost's node tables.
void rule15(const Integrand& f, const Piece& p, double a, double b, double& result, double& err)
{
    const auto& xk = Kronrod::abscissa();
    const auto& wk = Kronrod::weights();
    const auto& wg = Gauss::weights();
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);

    double fv1[8], fv2[8];
    double fc = eval_mapped(f, p, center);
    double resk = fc * wk[0];
    double resg = fc * wg[0];
    double resabs = std::abs(resk);
    for (int j = 1; j < 8; ++j) {
        double dx = half * xk[j];
        fv1[j] = eval_mapped(f, p, center - dx);
        fv2[j] = eval_mapped(f, p, center + dx);
        double s = fv1[j] + fv2[j];
        resk += wk[j] * s;
        resabs += wk[j] * (std::abs(fv1[j]) + std::abs(fv2[j]));
        if (j % 2 == 0)
            resg += wg[j / 2] * s;
    }
    double mean = 0.5 * resk;
    double resasc = wk[0] * std::abs(fc - mean);
    for (int j = 1; j < 8; ++j)
        resasc += wk[j] * (std::abs(fv1[j] - mean) + std::abs(fv2[j] - mean));

    result = resk * half;
    resabs *= std::abs(half);
    resasc *= std::abs(half);
    err = std::abs((resk - resg) * half);
    if (resasc != 0.0 && err != 0.0)
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    const double eps = std::numeric_limits<double>::epsilon();
    if (resabs > std::numeric_limits<double>::min() / (50.0 * eps))
        err = std::max(50.0 * eps * resabs, err);
}

}  // namespace

QuadratureResult integrate(const Integrand& f, double lo, double hi,
                           const std::vector<double>& breakpoints,
                           const std::vector<double>& singular,
                           const QuadratureSpec& spec)
{
    if (!(spec.abs_tol > 0.0) || !(spec.rel_tol > 0.0))
        throw Error(ErrorKind::invalid_config, "quadrature tolerances must be positive");
    QuadratureResult out;
    if (!(hi > lo))
        return out;

    std::vector<double> cuts;
    cuts.push_back(lo);
    for (double b : breakpoints)
        if (b > lo && b < hi && std::isfinite(b))
            cuts.push_back(b);
    cuts.push_back(hi);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    if (std::isinf(lo) && std::isinf(hi) && cuts.size() == 2)
        cuts.insert(cuts.begin() + 1, 0.0);

    auto is_singular = [&](double x) {
        return std::isfinite(x) && std::find(singular.begin(), singular.end(), x) != singular.end();
    };

    std::vector<Piece> pieces;
    std::priority_queue<Segment> heap;
    double total = 0.0, total_err = 0.0;

    auto add = [&](Piece p, double u0, double u1) {
        if (!(u1 > u0))
            return;
        pieces.push_back(p);
        Segment s{static_cast<int>(pieces.size()) - 1, u0, u1, 0.0, 0.0};
        rule15(f, pieces.back(), u0, u1, s.value, s.error);
        total += s.value;
        total_err += s.error;
        heap.push(s);
    };

    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        double a = cuts[i], b = cuts[i + 1];
        if (std::isinf(a) && std::isinf(b))
            continue;  // cannot happen: split at 0 above
        if (std::isinf(b)) {
            double a2 = a;
            if (is_singular(a)) {
                add({Piece::Kind::sqrt_left, a}, 0.0, 1.0);
                a2 = a + 1.0;
            }
            add({Piece::Kind::half_up, a2}, 0.0, 1.0);
            continue;
        }
        if (std::isinf(a)) {
            double b2 = b;
            if (is_singular(b)) {
                add({Piece::Kind::sqrt_right, b}, 0.0, 1.0);
                b2 = b - 1.0;
            }
            add({Piece::Kind::half_down, b2}, 0.0, 1.0);
            continue;
        }
        bool sa = is_singular(a), sb = is_singular(b);
        if (sa && sb) {
            double h = 0.5 * (b - a);
            add({Piece::Kind::sqrt_left, a}, 0.0, std::sqrt(h));
            add({Piece::Kind::sqrt_right, b}, 0.0, std::sqrt(b - (a + h)));
        } else if (sa) {
            add({Piece::Kind::sqrt_left, a}, 0.0, std::sqrt(b - a));
        } else if (sb) {
            add({Piece::Kind::sqrt_right, b}, 0.0, std::sqrt(b - a));
        } else {
            add({Piece::Kind::plain, 0.0}, a, b);
        }
    }

    int subdivisions = 0;
    std::vector<Segment> frozen;
    auto tolerance = [&] { return std::max(spec.abs_tol, spec.rel_tol * std::abs(total)); };
    while (total_err > tolerance()) {
        if (subdivisions >= spec.max_subdivisions || heap.empty()) {
            std::ostringstream msg;
            msg << "integral over [" << lo << ", " << hi << "] estimate " << total << " error " << total_err
                << " after " << subdivisions << " subdivisions";
            throw Error(ErrorKind::quadrature_nonconvergence, msg.str());
        }
        Segment s = heap.top();
        heap.pop();
        double mid = 0.5 * (s.u0 + s.u1);
        if (!(mid > s.u0 && mid < s.u1)) {
            // interval at machine resolution; accept its contribution as is
            total_err -= s.error;
            frozen.push_back(s);
            continue;
        }
        Segment l{s.piece, s.u0, mid, 0.0, 0.0}, r{s.piece, mid, s.u1, 0.0, 0.0};
        rule15(f, pieces[s.piece], l.u0, l.u1, l.value, l.error);
        rule15(f, pieces[s.piece], r.u0, r.u1, r.value, r.error);
        total += l.value + r.value - s.value;
        total_err += l.error + r.error - s.error;
        heap.push(l);
        heap.push(r);
        ++subdivisions;
    }

    // re-sum in a fixed order to avoid drift from the running updates
    double sum = 0.0, err = 0.0;
    int count = 0;
    std::vector<Segment> all = frozen;
    all.reserve(heap.size() + frozen.size());
    while (!heap.empty()) {
        all.push_back(heap.top());
        heap.pop();
    }
    std::sort(all.begin(), all.end(), [](const Segment& x, const Segment& y) {
        return x.piece != y.piece ? x.piece < y.piece : x.u0 < y.u0;
    });
    for (const auto& s : all) {
        sum += s.value;
        err += s.error;
        ++count;
    }
    out.value = sum;
    out.abs_error = err;
    out.intervals = count;
    return out;
}

}  // namespace robustdens
