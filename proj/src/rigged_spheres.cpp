#include "weldlab/rigged_spheres.hpp"

#include <cmath>

#include "weldlab/welding.hpp"

namespace weldlab {

namespace {

// |m(q)| < 1 tested projectively so q = inf works.
bool inside_unit_disk(const Mobius& m, const SpherePoint& q) {
    const SpherePoint img = m.apply(q);
    return std::abs(img.z) < std::abs(img.w);
}

void check_marked_distinct(const std::vector<SpherePoint>& marked, const char* what) {
    for (size_t a = 0; a < marked.size(); ++a)
        for (size_t b = a + 1; b < marked.size(); ++b)
            if (chordal_distance(marked[a], marked[b]) < 1e-12) throw InputError(what);
}

cpx circumcenter(cpx a, cpx b, cpx c) {
    const cpx num = std::norm(a) * (b - c) + std::norm(b) * (c - a) + std::norm(c) * (a - b);
    const cpx den = std::conj(a) * (b - c) + std::conj(b) * (c - a) + std::conj(c) * (a - b);
    if (std::abs(den) < 1e-14 * (std::abs(a) + std::abs(b) + std::abs(c) + 1.0))
        throw InputError("möbius move sends a boundary circle through infinity");
    return num / den;
}

}  // namespace

bool PunctureChart::contains(const SpherePoint& q) const { return inside_unit_disk(geometry, q); }

void validate(const RiggedSphere& s) {
    check_marked_distinct(s.marked, "marked points must be pairwise distinct");
    if (s.model == SphereModel::border) {
        if (!s.riggings_punct.empty())
            throw InputError("border-model sphere carries puncture charts");
        const auto& bs = s.boundaries;
        for (size_t a = 0; a < bs.size(); ++a) {
            if (!(bs[a].radius > 0.0)) throw InputError("boundary circle radius must be positive");
            for (size_t b = a + 1; b < bs.size(); ++b)
                if (std::abs(bs[a].center - bs[b].center) <= bs[a].radius + bs[b].radius)
                    throw InputError("boundary circles must be pairwise disjoint");
            for (const auto& q : s.marked) {
                if (q.is_infinite()) continue;
                if (std::abs(q.value() - bs[a].center) <= bs[a].radius)
                    throw InputError("marked points must avoid the boundary disks");
            }
        }
        return;
    }
    if (!s.boundaries.empty()) throw InputError("puncture-model sphere carries boundary circles");
    const auto& ch = s.riggings_punct;
    for (size_t a = 0; a < ch.size(); ++a) {
        if (std::abs(ch[a].geometry.det()) < 1e-14)
            throw InputError("puncture chart geometry is singular");
        // domains non-overlapping: neither boundary circle nor center of one
        // chart may enter another chart's domain
        for (size_t b = 0; b < ch.size(); ++b) {
            if (a == b) continue;
            const Mobius back = ch[a].geometry.inverse();
            if (ch[b].contains(back.apply(SpherePoint(cpx(0.0)))))
                throw InputError("puncture chart domains overlap");
            for (int k = 0; k < 64; ++k) {
                const SpherePoint rim = back.apply(SpherePoint(std::polar(1.0, kTwoPi * k / 64)));
                if (ch[b].contains(rim)) throw InputError("puncture chart domains overlap");
            }
        }
        // marked points stay clear of chart domains except the chart's own puncture
        const SpherePoint p = ch[a].puncture();
        for (const auto& q : s.marked)
            if (ch[a].contains(q) && chordal_distance(q, p) > 1e-9)
                throw InputError("marked points must avoid the puncture chart domains");
    }
}

ModuliVector moduli(const RiggedSphere& s) {
    ModuliVector out;
    if (s.marked.size() < 4) return out;
    out.reserve(s.marked.size() - 3);
    for (size_t k = 3; k < s.marked.size(); ++k)
        out.push_back(cross_ratio(s.marked[k], s.marked[0], s.marked[1], s.marked[2]).value());
    return out;
}

RiggedSphere apply_mobius(const RiggedSphere& s, const Mobius& sigma) {
    validate(s);
    if (std::abs(sigma.det()) < 1e-14) throw InputError("möbius move is degenerate");
    const Mobius inv = sigma.inverse();

    RiggedSphere out;
    out.model = s.model;
    out.io_labels = s.io_labels;
    out.marked.reserve(s.marked.size());
    for (const auto& q : s.marked) out.marked.push_back(sigma.apply(q));
    check_marked_distinct(out.marked, "möbius move collided marked points");

    const SpherePoint pole = inv.apply(SpherePoint::infinity());
    for (const auto& circle : s.boundaries) {
        if (!pole.is_infinite()) {
            const double gap = std::abs(pole.value() - circle.center) - circle.radius;
            if (std::abs(gap) < 1e-12 * (1.0 + circle.radius))
                throw InputError("möbius move sends a boundary circle through infinity");
            if (gap < 0.0) throw InputError("möbius move flips a boundary circle");
        }
        cpx pts[3];
        for (int k = 0; k < 3; ++k)
            pts[k] = sigma.apply_finite(circle.center +
                                        std::polar(circle.radius, kTwoPi * k / 3.0));
        BoundaryCircle img;
        img.center = circumcenter(pts[0], pts[1], pts[2]);
        img.radius = std::abs(pts[0] - img.center);
        // reparametrize so the rigging of the image circle marks the same
        // boundary points: psi' = psi o (m o sigma^{-1} o m'^{-1})
        const Mobius rho = circle.normalizing().compose(inv).compose(img.normalizing().inverse());
        img.rigging = compose(circle.rigging, CircleMap::mobius(rho, circle.rigging.n()));
        out.boundaries.push_back(std::move(img));
    }
    for (const auto& chart : s.riggings_punct)
        out.riggings_punct.push_back(PunctureChart{chart.geometry.compose(inv), chart.distortion});

    validate(out);
    return out;
}

RiggedSphere caps_to_punctures(const RiggedSphere& s, double seam_tol) {
    if (s.model != SphereModel::border)
        throw InputError("caps_to_punctures requires a border-model sphere");
    validate(s);

    RiggedSphere out;
    out.model = SphereModel::puncture;
    out.io_labels = s.io_labels;
    if (s.boundaries.empty()) {
        out.marked = s.marked;
        return out;
    }

    // Global coordinate change z -> r1/(z - c1): the first cap's puncture
    // goes to infinity, every other circle stays a round circle.
    const Mobius norm = Mobius::inversion().compose(s.boundaries.front().normalizing());
    const Mobius norm_inv = norm.inverse();
    for (const auto& q : s.marked) out.marked.push_back(norm.apply(q));

    for (const auto& circle : s.boundaries) {
        PunctureChart chart;
        if (circle.rigging.kind() == MapKind::sampled) {
            // seam of the cap against a non-möbius rigging must actually weld
            WeldOptions wopts;
            wopts.tol = seam_tol;
            (void)weld(invert(circle.rigging), wopts);
            chart.geometry = circle.normalizing().compose(norm_inv);
            chart.distortion = circle.rigging;
        } else {
            chart.geometry =
                circle.rigging.mobius_matrix().compose(circle.normalizing()).compose(norm_inv);
        }
        const SpherePoint p = chart.puncture();
        for (const auto& q : out.marked)
            if (chordal_distance(q, p) < 1e-9)
                throw InputError("cap puncture collides with a marked point");
        out.marked.push_back(p);
        out.riggings_punct.push_back(std::move(chart));
    }
    validate(out);
    return out;
}

}  // namespace weldlab
