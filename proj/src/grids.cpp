#include "weldlab/grids.hpp"

#include <algorithm>
#include <cmath>

namespace weldlab {
namespace {

// bilinear weights for a fractional index u in [0, n-1]
struct Cell {
    int i0, i1;
    double w1;
};

Cell clamped_cell(double u, int n) {
    const double c = std::clamp(u, 0.0, static_cast<double>(n - 1));
    int i0 = static_cast<int>(std::floor(c));
    i0 = std::min(i0, n - 2 >= 0 ? n - 2 : 0);
    return {i0, std::min(i0 + 1, n - 1), c - i0};
}

}  // namespace

cpx PlaneMap::operator()(cpx z) const {
    if (evaluator) return evaluator(z);
    if (std::holds_alternative<RectGrid>(grid)) {
        const auto& g = std::get<RectGrid>(grid);
        const Cell cx = clamped_cell((z.real() - g.x0) / g.dx, g.nx);
        const Cell cy = clamped_cell((z.imag() - g.y0) / g.dy, g.ny);
        const cpx v00 = values[g.index(cx.i0, cy.i0)], v10 = values[g.index(cx.i1, cy.i0)];
        const cpx v01 = values[g.index(cx.i0, cy.i1)], v11 = values[g.index(cx.i1, cy.i1)];
        return (1.0 - cy.w1) * ((1.0 - cx.w1) * v00 + cx.w1 * v10) +
               cy.w1 * ((1.0 - cx.w1) * v01 + cx.w1 * v11);
    }
    const auto& g = std::get<PolarGrid>(grid);
    const Cell cr = clamped_cell((std::abs(z) - g.r0) / g.dr(), g.nr);
    double ang = std::arg(z);
    if (ang < 0.0) ang += kTwoPi;
    const double ut = ang / kTwoPi * g.ntheta;
    const int j0 = static_cast<int>(std::floor(ut)) % g.ntheta;
    const int j1 = (j0 + 1) % g.ntheta;
    const double wt = ut - std::floor(ut);
    const cpx v00 = values[g.index(cr.i0, j0)], v10 = values[g.index(cr.i0, j1)];
    const cpx v01 = values[g.index(cr.i1, j0)], v11 = values[g.index(cr.i1, j1)];
    return (1.0 - cr.w1) * ((1.0 - wt) * v00 + wt * v10) +
           cr.w1 * ((1.0 - wt) * v01 + wt * v11);
}

cpx BeltramiField::at(cpx z) const {
    if (std::holds_alternative<RectGrid>(grid)) {
        const auto& g = std::get<RectGrid>(grid);
        const double ux = (z.real() - g.x0) / g.dx, uy = (z.imag() - g.y0) / g.dy;
        if (ux < 0.0 || uy < 0.0 || ux > g.nx - 1 || uy > g.ny - 1) return {};
        const Cell cx = clamped_cell(ux, g.nx), cy = clamped_cell(uy, g.ny);
        const cpx v00 = mu[g.index(cx.i0, cy.i0)], v10 = mu[g.index(cx.i1, cy.i0)];
        const cpx v01 = mu[g.index(cx.i0, cy.i1)], v11 = mu[g.index(cx.i1, cy.i1)];
        return (1.0 - cy.w1) * ((1.0 - cx.w1) * v00 + cx.w1 * v10) +
               cy.w1 * ((1.0 - cx.w1) * v01 + cx.w1 * v11);
    }
    const auto& g = std::get<PolarGrid>(grid);
    const double r = std::abs(z);
    if (r < g.r0 || r > g.r1) return {};
    const Cell cr = clamped_cell((r - g.r0) / g.dr(), g.nr);
    double ang = std::arg(z);
    if (ang < 0.0) ang += kTwoPi;
    const double ut = ang / kTwoPi * g.ntheta;
    const int j0 = static_cast<int>(std::floor(ut)) % g.ntheta;
    const int j1 = (j0 + 1) % g.ntheta;
    const double wt = ut - std::floor(ut);
    const cpx v00 = mu[g.index(cr.i0, j0)], v10 = mu[g.index(cr.i0, j1)];
    const cpx v01 = mu[g.index(cr.i1, j0)], v11 = mu[g.index(cr.i1, j1)];
    return (1.0 - cr.w1) * ((1.0 - wt) * v00 + wt * v10) +
           cr.w1 * ((1.0 - wt) * v01 + wt * v11);
}

double BeltramiField::computed_sup(const std::vector<cpx>& samples) {
    double s = 0.0;
    for (const cpx& v : samples) s = std::max(s, std::abs(v));
    return s;
}

BeltramiField disk_indicator_field(cpx coeff, int n, double half_side) {
    const RectGrid g = RectGrid::square(n, half_side);
    BeltramiField field;
    field.grid = g;
    field.mu.assign(g.size(), cpx{});
    const double half = 0.5 * g.dx;
    for (int j = 0; j < g.ny; ++j) {
        for (int i = 0; i < g.nx; ++i) {
            const cpx z = g.node(i, j);
            const double r = std::abs(z);
            const double reach = half * 1.4142135623730951;
            if (r <= 1.0 - reach) {
                field.mu[g.index(i, j)] = coeff;
            } else if (r < 1.0 + reach) {
                int inside = 0;
                for (int a = 0; a < 4; ++a)
                    for (int b = 0; b < 4; ++b) {
                        const cpx s{z.real() + (a - 1.5) * g.dx / 4.0,
                                    z.imag() + (b - 1.5) * g.dy / 4.0};
                        if (std::norm(s) <= 1.0) ++inside;
                    }
                field.mu[g.index(i, j)] = coeff * (inside / 16.0);
            }
        }
    }
    field.sup_norm = BeltramiField::computed_sup(field.mu);
    field.support_radius = 1.0 + g.dx;
    return field;
}

}  // namespace weldlab
