#pragma once
// Sewing two bordered genus-zero pieces along chosen boundary circles. The
// riggings produce one circle homeomorphism (the seam identification), its
// welding produces the conformal transports of both pieces into the sewn
// sphere, and marked points ride along.

#include <vector>

#include "weldlab/rigged_spheres.hpp"
#include "weldlab/welding.hpp"

namespace weldlab {

// Seam map in normalized circle coordinates: k = J o psi2^{-1} o iota o psi1
// with iota(z) = 1/z the boundary reciprocal and J(w) = 1/w the carrier of
// piece 2 to the interior model. On S^1 both act as theta -> -theta, so
// identity riggings give the identity seam.
[[nodiscard]] CircleMap identification_map(const CircleMap& psi1, const CircleMap& psi2);

struct SewOptions {
    int n = 1024;            // seam samples, power of two
    double seam_tol = 1e-4;  // residual acceptance for the seam welding
    WeldOptions weld;        // solver / extension knobs (n and tol overridden)
};

// Unsewn boundary transported into the sewn sphere: the image curve sampled
// at the rigging parameters theta_k = 2 pi k / n (the data a further sewing
// or an export consumes; transports are welding maps, so images of circles
// are generally not circles).
struct LeftoverBoundary {
    int piece = 0;  // 1 or 2
    int index = 0;  // boundary index within the source piece
    std::vector<cpx> curve;
};

struct SewnSurface {
    RiggedSphere result;      // marked/puncture picture of the sewn sphere
    PlaneMap left_map;        // sigma o g in the normalized coordinate of circle i
    PlaneMap right_map;       // sigma o f in the interior-model coordinate of circle j
    Mobius prep1, prep2;      // circle normalizations m_i, m_j
    Mobius normalization;     // sigma: pins (g(1), g(-1), g(inf)) -> (1, -1, inf)
    CircleMap welding_input = CircleMap::identity();  // the welded seam map
    WeldingPair welding;
    std::vector<LeftoverBoundary> leftover;

    // Transport of a point of piece 1 (exterior of circle i) or piece 2.
    [[nodiscard]] SpherePoint left(const SpherePoint& z) const;
    [[nodiscard]] SpherePoint right(const SpherePoint& z) const;
};

// Sew boundary i of s1 to boundary j of s2. Both pieces must be border
// model; the seam residual must pass opts.seam_tol. Piece 1 transports by
// the exterior welding map, piece 2 by the interior one through the model
// inversion; the result carries all marked points of both pieces (piece 1
// first) and no boundary records (see LeftoverBoundary).
[[nodiscard]] SewnSurface sew(const RiggedSphere& s1, int i, const RiggedSphere& s2, int j,
                              const SewOptions& opts = {});

// moduli of the sewn sphere's marked points.
[[nodiscard]] ModuliVector moduli_of_sewn(const SewnSurface& s);

}  // namespace weldlab
