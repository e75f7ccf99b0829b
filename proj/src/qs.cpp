#include "weldlab/qs.hpp"

#include <cmath>
#include <limits>

namespace weldlab {
namespace {

double wrap_to_pi(double theta) {
    return theta - kTwoPi * std::floor((theta + kPi) / kTwoPi);
}

}  // namespace

QsEstimate qs_constant(const CircleMap& m, int depth) {
    if (depth < 1) throw InputError("qs depth must be at least 1");
    const bool is_identity = m.kind() == MapKind::identity;
    const double step = std::ldexp(1.0, -depth);
    const long jmax = std::lround(64.0 / step);

    // Cayley pole x* = tan(theta*/2) with h(e^{i theta*}) = -1; absent when h
    // fixes -1 (pole at infinity).
    bool has_pole = false;
    double pole = 0.0;
    if (!is_identity) {
        const double theta_star = wrap_to_pi(invert(m).lift(kPi));
        if (kPi - std::fabs(theta_star) > 1e-9) {
            has_pole = true;
            pole = std::tan(0.5 * theta_star);
        }
    }

    // h on the line, cached over the probe grid. The identity skips the trig
    // round trip so its ratios are exactly 1.
    std::vector<double> vals(static_cast<size_t>(2 * jmax + 1));
    for (long j = -jmax; j <= jmax; ++j) {
        const double x = static_cast<double>(j) * step;
        vals[static_cast<size_t>(j + jmax)] =
            is_identity ? x : std::tan(0.5 * m.lift(2.0 * std::atan(x)));
    }

    QsEstimate est;
    est.k = 1.0;
    est.worst_x = 0.0;
    est.worst_y = 0.5;
    for (int s = 1; s <= depth; ++s) {
        const double y = std::ldexp(1.0, -s);
        est.scales.push_back(y);
        const long d = 1L << (depth - s);
        for (long j = -jmax + d; j <= jmax - d; ++j) {
            const double x = static_cast<double>(j) * step;
            if (has_pole && std::fabs(x - pole) < y + step) continue;
            const double hx = vals[static_cast<size_t>(j + jmax)];
            const double num = vals[static_cast<size_t>(j + d + jmax)] - hx;
            const double den = hx - vals[static_cast<size_t>(j - d + jmax)];
            if (den < 1e-14 || num < 1e-14) {
                est.k = std::numeric_limits<double>::infinity();
                est.worst_x = x;
                est.worst_y = y;
                return est;
            }
            const double rho = num / den;
            const double ratio = rho < 1.0 ? 1.0 / rho : rho;
            if (ratio > est.k) {
                est.k = ratio;
                est.worst_x = x;
                est.worst_y = y;
            }
        }
    }
    return est;
}

CircleMap circle_from_line_map(const std::function<double(double)>& line_map, int n) {
    std::vector<double> lift(static_cast<size_t>(n));
    for (int k = 0; k < n; ++k) {
        if (2 * k == n) {
            lift[static_cast<size_t>(k)] = kPi;
            continue;
        }
        // principal angle in (-pi, pi), shifted back to the k-th branch
        const double theta = kTwoPi * k / n - (2 * k > n ? kTwoPi : 0.0);
        const double image = 2.0 * std::atan(line_map(std::tan(0.5 * theta)));
        lift[static_cast<size_t>(k)] = image + (2 * k > n ? kTwoPi : 0.0);
    }
    return CircleMap::from_lift_samples(std::move(lift));
}

}  // namespace weldlab
