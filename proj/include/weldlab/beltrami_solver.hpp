#pragma once
// Solver for the Beltrami equation f_zbar = mu * f_z on the sphere, for
// coefficients supported in a bounded disk. h = f_zbar is found by the
// Neumann iteration h <- mu * T(h) + mu, with the Beurling transform T
// applied as a Fourier multiplier on a periodized square; a few fixed-point
// sweeps against the free-space transform (exact integrals of the kernel
// over grid cells) then remove the periodization bias. The map is recovered
// as f = z + C(h), with C the solid Cauchy transform of the cell-constant
// density h: evaluated by FFT convolution on the grid and by direct cell
// summation everywhere else.

#include <array>
#include <functional>
#include <utility>
#include <vector>

#include "weldlab/grids.hpp"

namespace weldlab {

struct SolveOptions {
    int grid_n = 512;          // nodes per side of the solver grid
    double grid_radius = 0.0;  // R with box [-2R, 2R)^2; 0 picks max(2, support radius)
    double tol = 1e-10;        // sup-change stopping threshold
    int max_iter = 200;
    int free_space_sweeps = 2;  // post-iteration sweeps against the free-space transform
};

struct SolveReport {
    int iterations = 0;  // multiplier-phase iterations, excludes the sweeps below
    int refinement_sweeps = 0;
    double residual = 0.0;  // finite-difference defect of the returned map
    NormalizationTag normalization = NormalizationTag::hydrodynamic;
    std::vector<double> sup_changes;  // per-iteration sup change, for convergence diagnostics
};

// Solve f_zbar = mu * f_z. Requires sup|mu| <= 0.9 and support inside
// |z| <= grid radius. Hydrodynamic normalization means f(z) - z -> 0 at
// infinity; fix-0-1-inf post-composes the affine map pinning f(0) = 0 and
// f(1) = 1 (infinity is already fixed).
[[nodiscard]] std::pair<PlaneMap, SolveReport> solve_beltrami(
    const BeltramiField& mu, NormalizationTag norm = NormalizationTag::hydrodynamic,
    const SolveOptions& opts = {});

// sup over interior grid nodes of |f_zbar - mu f_z| / (1 + |f_z|), with the
// Wirtinger derivatives taken by finite differences on f's own grid. An
// optional region predicate restricts which nodes count (e.g. to skip a ring
// where the true derivative is discontinuous and finite differences cannot
// represent it).
[[nodiscard]] double residual(const PlaneMap& f, const BeltramiField& mu,
                              const std::function<bool(cpx)>& region = {});

// Post-compose with the Mobius map sending (f(p1), f(p2), f(p3)) back to
// (p1, p2, p3). Values, the evaluator, and the tracked image of infinity all
// move together; the Beltrami coefficient is unchanged.
[[nodiscard]] PlaneMap renormalize(const PlaneMap& f, const std::array<SpherePoint, 3>& points);

}  // namespace weldlab
