#pragma once
// Genus-zero rigged surfaces: the sphere with marked points plus either
// round boundary circles carrying circle-map riggings (border model) or
// punctures carrying local coordinate charts (puncture model). Moduli are
// the cross-ratios of the marked points; möbius moves transport every piece
// of data so that boundary identifications are unchanged.

#include <optional>
#include <string>
#include <vector>

#include "weldlab/circle_map.hpp"
#include "weldlab/mobius.hpp"

namespace weldlab {

enum class SphereModel { border, puncture };

// Round boundary circle with rigging psi : S^1 -> S^1 acting in the
// normalized coordinate zeta = (z - center)/radius; the rigging map of the
// actual boundary is psi o m with m that normalization.
struct BoundaryCircle {
    cpx center{0.0};
    double radius = 1.0;
    CircleMap rigging = CircleMap::identity();

    // m(z) = (z - center)/radius carrying the circle to S^1, piece side out.
    [[nodiscard]] Mobius normalizing() const { return Mobius{1.0, -center, 0.0, radius}; }
};

// Local coordinate at a puncture. geometry is a möbius map carrying the
// chart domain onto the unit disk and the puncture to 0; when a distortion
// is present the chart's boundary values are distortion o geometry on the
// domain circle (the interior continuation is conformal, supplied by the
// welding machinery on demand rather than stored).
struct PunctureChart {
    Mobius geometry;
    std::optional<CircleMap> distortion;

    [[nodiscard]] SpherePoint puncture() const {
        return geometry.inverse().apply(SpherePoint(cpx(0.0)));
    }
    // True when the chart point q lies strictly inside the chart domain.
    [[nodiscard]] bool contains(const SpherePoint& q) const;
};

struct RiggedSphere {
    SphereModel model = SphereModel::border;
    std::vector<SpherePoint> marked;
    std::vector<BoundaryCircle> boundaries;     // border model only
    std::vector<PunctureChart> riggings_punct;  // puncture model only
    std::vector<std::string> io_labels;         // carried verbatim, never interpreted
};

using ModuliVector = std::vector<cpx>;

// Model invariants: boundary disks pairwise disjoint and clear of the marked
// points, puncture chart domains non-overlapping, marked points pairwise
// distinct. Throws InputError with the violated condition.
void validate(const RiggedSphere& s);

// Cross-ratios of marked[k], k >= 3, against the frame (marked[0], marked[1],
// marked[2]) -> (0, 1, inf). Fewer than four marked points give ().
[[nodiscard]] ModuliVector moduli(const RiggedSphere& s);

// Transport the sphere by sigma: marked points projectively, boundary
// circles to their image circles with riggings reparametrized so the seam
// data is unchanged, puncture charts by composition with sigma^{-1}. Moves
// placing sigma^{-1}(inf) inside a boundary disk would turn the piece inside
// out and are rejected.
[[nodiscard]] RiggedSphere apply_mobius(const RiggedSphere& s, const Mobius& sigma);

// Sew the cap (a punctured disk with identity rigging) onto every boundary
// circle, producing the puncture model. Everything is expressed in the
// coordinate normalized so the first cap's puncture lands at infinity;
// marked points move by that möbius alone, and each cap contributes one new
// marked puncture and one chart whose boundary distortion is the original
// rigging. Non-möbius riggings are welded first (seam check), so welding
// failures propagate.
[[nodiscard]] RiggedSphere caps_to_punctures(const RiggedSphere& s, double seam_tol = 1e-4);

}  // namespace weldlab
