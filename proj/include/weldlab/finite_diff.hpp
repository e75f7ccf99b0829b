#pragma once
// Discrete Wirtinger derivatives of grid samples: central differences at
// interior nodes, one-sided at rectangular edges and radial rims; the polar
// angle wraps.

#include <vector>

#include "weldlab/grids.hpp"

namespace weldlab {
namespace fd {

struct Wirtinger {
    cpx fz, fzbar;
};

inline Wirtinger rect_derivs(const RectGrid& g, const std::vector<cpx>& v, int i, int j) {
    cpx fx, fy;
    if (i == 0)
        fx = (v[g.index(1, j)] - v[g.index(0, j)]) / g.dx;
    else if (i == g.nx - 1)
        fx = (v[g.index(g.nx - 1, j)] - v[g.index(g.nx - 2, j)]) / g.dx;
    else
        fx = (v[g.index(i + 1, j)] - v[g.index(i - 1, j)]) / (2.0 * g.dx);
    if (j == 0)
        fy = (v[g.index(i, 1)] - v[g.index(i, 0)]) / g.dy;
    else if (j == g.ny - 1)
        fy = (v[g.index(i, g.ny - 1)] - v[g.index(i, g.ny - 2)]) / g.dy;
    else
        fy = (v[g.index(i, j + 1)] - v[g.index(i, j - 1)]) / (2.0 * g.dy);
    const cpx iu(0.0, 1.0);
    return {0.5 * (fx - iu * fy), 0.5 * (fx + iu * fy)};
}

inline Wirtinger polar_derivs(const PolarGrid& g, const std::vector<cpx>& v, int i, int j) {
    cpx fr;
    if (i == 0)
        fr = (v[g.index(1, j)] - v[g.index(0, j)]) / g.dr();
    else if (i == g.nr - 1)
        fr = (v[g.index(g.nr - 1, j)] - v[g.index(g.nr - 2, j)]) / g.dr();
    else
        fr = (v[g.index(i + 1, j)] - v[g.index(i - 1, j)]) / (2.0 * g.dr());
    const int jp = (j + 1) % g.ntheta, jm = (j + g.ntheta - 1) % g.ntheta;
    const cpx ft = (v[g.index(i, jp)] - v[g.index(i, jm)]) / (2.0 * kTwoPi / g.ntheta);
    const double r = g.radius(i);
    const cpx iu(0.0, 1.0);
    const cpx e = std::polar(1.0, g.angle(j));
    return {0.5 * (fr - iu * ft / r) / e, 0.5 * e * (fr + iu * ft / r)};
}

inline Wirtinger derivs(const GridSpec& grid, const std::vector<cpx>& v, int i, int j) {
    return std::holds_alternative<RectGrid>(grid)
               ? rect_derivs(std::get<RectGrid>(grid), v, i, j)
               : polar_derivs(std::get<PolarGrid>(grid), v, i, j);
}

}  // namespace fd
}  // namespace weldlab
