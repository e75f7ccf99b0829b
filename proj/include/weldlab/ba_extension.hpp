#pragma once
// Beurling-Ahlfors extension of an increasing line homeomorphism to the upper
// half plane, its disk/exterior-disk transplant, and Beltrami coefficients of
// sampled maps.

#include <functional>

#include "weldlab/circle_map.hpp"
#include "weldlab/grids.hpp"

namespace weldlab {

// f = u + iv with u = (1/2) int_0^1 (h(x+ty) + h(x-ty)) dt and
// v = (1/2) int_0^1 (h(x+ty) - h(x-ty)) dt; composite Simpson starting at 64
// intervals, doubled until successive values differ by < 1e-10 (capped).
[[nodiscard]] cpx ba_extend_point(const std::function<double(double)>& h_line, cpx z);

// Same averages sampled over a half-plane grid (y >= 0; the y = 0 row is the
// boundary trace). Carries a pointwise evaluator.
[[nodiscard]] PlaneMap ba_extend(const std::function<double(double)>& h_line,
                                 const RectGrid& grid);

// mu = f_zbar / f_z by central differences at interior nodes, one-sided at
// edges (radial edges for polar grids; the angle wraps).
[[nodiscard]] BeltramiField beltrami_of_map(const PlaneMap& f);

// min over interior nodes of |f_z|^2 - |f_zbar|^2 (orientation check)
[[nodiscard]] double min_interior_jacobian(const PlaneMap& f);

struct DiskExtendOptions {
    int nr = 256;
    int ntheta = 1024;
};

// Quasiconformal self-map of the exterior disk with boundary values h: the
// Beurling-Ahlfors extension of the lift, reflected across the real axis and
// carried over by the exponential cover, then blended log-polar to the
// identity on 3 <= |z| <= 4 and equal to it beyond. Fixes infinity, and mu
// is supported in 1 <= |z| <= 4. Identity and möbius inputs short-circuit to
// their closed forms (a non-rotation möbius is conformal everywhere but
// moves infinity).
[[nodiscard]] PlaneMap disk_extend(const CircleMap& h, const DiskExtendOptions& opts = {});

}  // namespace weldlab
