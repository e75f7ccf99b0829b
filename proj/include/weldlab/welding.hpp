#pragma once
// Conformal welding: factor a circle homeomorphism h as g^{-1} o f, with f
// conformal on the unit disk, g conformal on the exterior disk, and the
// underlying sphere map normalized to fix 1, 0, -1. The inverse direction
// (synthesize_h) builds test instances from a univalent interior map by
// computing the exterior Riemann map of its boundary curve.

#include <functional>
#include <limits>
#include <utility>
#include <vector>

#include "weldlab/ba_extension.hpp"
#include "weldlab/beltrami_solver.hpp"
#include "weldlab/circle_map.hpp"

namespace weldlab {

struct WeldOptions {
    int n = 1024;  // boundary sample count, power of two
    double tol = std::numeric_limits<double>::infinity();  // residual acceptance
    SolveOptions solver;                                   // grid_radius 0 = auto
    DiskExtendOptions extension;
};

struct WeldingPair {
    PlaneMap f;                       // conformal on the unit disk
    PlaneMap g;                       // conformal on the exterior disk
    std::vector<cpx> omega_boundary;  // samples of f(S^1), the boundary of Omega
    double residual = 0.0;            // sup over S^1 of |g^{-1} o f - h|
    Mobius normalization;             // certificate: post-composition pinning 1, 0, -1
};

// Factor h. Identity and Mobius inputs take exact closed-form lanes; sampled
// maps run the extension -> Beltrami solve -> boundary series pipeline.
// Throws NumericError when the residual exceeds opts.tol.
[[nodiscard]] WeldingPair weld(const CircleMap& h, const WeldOptions& opts = {});

struct SynthOptions {
    int n = 1024;      // boundary samples, power of two
    double tol = 1e-12;  // conjugation-iteration stopping threshold
    int max_iter = 200;
};

// Welding test-instance generator: h = g0^{-1} o f0 on S^1 plus the
// normalized oracle pair, where g0 is the exterior Riemann map of the
// complement of f0(D), computed by a conjugate-function iteration on the
// sampled boundary curve. Requires the curve to be starlike about f0(0)
// (a sufficient simplicity certificate; non-starlike curves are rejected).
[[nodiscard]] std::pair<CircleMap, WeldingPair> synthesize_h(
    const std::function<cpx(cpx)>& f0, const SynthOptions& opts = {});

// Recompute the S^1 sup defect |g^{-1} o f - h| from the pair's evaluators.
[[nodiscard]] double verify_weld(const WeldingPair& pair, const CircleMap& h);

}  // namespace weldlab
