#include "weldlab/sewing.hpp"

#include <cmath>
#include <memory>

namespace weldlab {

namespace {

// sigma o base, values and evaluator together; poles land as huge sentinels
// in the sample array (the evaluator stays exact).
PlaneMap postcompose(const Mobius& sigma, const PlaneMap& base) {
    PlaneMap out = base;
    for (auto& v : out.values) {
        const SpherePoint img = sigma.apply(SpherePoint(v));
        v = img.is_infinite() ? cpx(1e300, 0.0) : img.value();
    }
    if (base.evaluator) {
        auto ev = base.evaluator;
        out.evaluator = [sigma, ev](cpx z) { return sigma.apply_finite(ev(z)); };
    } else {
        auto held = std::make_shared<PlaneMap>(base);
        out.evaluator = [sigma, held](cpx z) { return sigma.apply_finite((*held)(z)); };
    }
    out.at_infinity = sigma.apply(base.at_infinity);
    out.normalization = NormalizationTag::none;
    return out;
}

void append_label(std::vector<std::string>& dst, const std::vector<std::string>& src, int index) {
    if (index < static_cast<int>(src.size())) dst.push_back(src[static_cast<size_t>(index)]);
}

}  // namespace

CircleMap identification_map(const CircleMap& psi1, const CircleMap& psi2) {
    return compose(conjugate_by_inversion(invert(psi2)), psi1);
}

SpherePoint SewnSurface::left(const SpherePoint& z) const {
    const SpherePoint zeta = prep1.apply(z);
    if (zeta.is_infinite()) return normalization.apply(welding.g.at_infinity);
    return SpherePoint(left_map(zeta.value()));
}

SpherePoint SewnSurface::right(const SpherePoint& z) const {
    const SpherePoint u = Mobius::inversion().apply(prep2.apply(z));
    if (u.is_infinite()) throw InputError("transported point is the sewn-away disk center");
    return SpherePoint(right_map(u.value()));
}

SewnSurface sew(const RiggedSphere& s1, int i, const RiggedSphere& s2, int j,
                const SewOptions& opts) {
    if (s1.model != SphereModel::border || s2.model != SphereModel::border)
        throw InputError("sew requires border-model pieces");
    validate(s1);
    validate(s2);
    if (i < 0 || i >= static_cast<int>(s1.boundaries.size()) || j < 0 ||
        j >= static_cast<int>(s2.boundaries.size()))
        throw InputError("sew boundary index out of range");

    const BoundaryCircle& b1 = s1.boundaries[static_cast<size_t>(i)];
    const BoundaryCircle& b2 = s2.boundaries[static_cast<size_t>(j)];

    SewnSurface out;
    out.prep1 = b1.normalizing();
    out.prep2 = b2.normalizing();

    // snap compositions that are möbius to machine precision, so gauge
    // replacements land in the same welding lane as their plain form
    const CircleMap k = classify_exact_kind(identification_map(b1.rigging, b2.rigging));
    out.welding_input = invert(k);
    if (out.welding_input.kind() == MapKind::sampled) {
        // materialize the lazy inverse: the extension quadrature evaluates this
        // lift millions of times, and a direct interpolant is ~40x cheaper
        std::vector<double> lift(static_cast<size_t>(opts.n));
        for (int m = 0; m < opts.n; ++m)
            lift[static_cast<size_t>(m)] = out.welding_input.lift(kTwoPi * m / opts.n);
        out.welding_input = CircleMap::from_lift_samples(lift);
    }

    WeldOptions wopts = opts.weld;
    wopts.n = opts.n;
    wopts.tol = opts.seam_tol;
    out.welding = weld(out.welding_input, wopts);

    const SpherePoint src[3] = {SpherePoint(out.welding.g(cpx(1.0, 0.0))),
                                SpherePoint(out.welding.g(cpx(-1.0, 0.0))),
                                out.welding.g.at_infinity};
    const SpherePoint dst[3] = {SpherePoint(cpx(1.0)), SpherePoint(cpx(-1.0)),
                                SpherePoint::infinity()};
    out.normalization = Mobius::through(src, dst);
    out.left_map = postcompose(out.normalization, out.welding.g);
    out.right_map = postcompose(out.normalization, out.welding.f);

    RiggedSphere res;
    res.model = SphereModel::puncture;
    res.marked.reserve(s1.marked.size() + s2.marked.size());
    for (const auto& q : s1.marked) res.marked.push_back(out.left(q));
    for (const auto& q : s2.marked) res.marked.push_back(out.right(q));
    for (size_t a = 0; a < res.marked.size(); ++a)
        for (size_t b = a + 1; b < res.marked.size(); ++b)
            if (chordal_distance(res.marked[a], res.marked[b]) < 1e-9)
                throw InputError("sewing produced colliding marked points");

    for (int b = 0; b < static_cast<int>(s1.boundaries.size()); ++b) {
        if (b == i) continue;
        const BoundaryCircle& circle = s1.boundaries[static_cast<size_t>(b)];
        const CircleMap inv = invert(circle.rigging);
        LeftoverBoundary lb{1, b, {}};
        lb.curve.resize(static_cast<size_t>(opts.n));
        for (int m = 0; m < opts.n; ++m) {
            const cpx p =
                circle.center + std::polar(circle.radius, inv.lift(kTwoPi * m / opts.n));
            lb.curve[static_cast<size_t>(m)] = out.left(SpherePoint(p)).value();
        }
        append_label(res.io_labels, s1.io_labels, b);
        out.leftover.push_back(std::move(lb));
    }
    for (int b = 0; b < static_cast<int>(s2.boundaries.size()); ++b) {
        if (b == j) continue;
        const BoundaryCircle& circle = s2.boundaries[static_cast<size_t>(b)];
        const CircleMap inv = invert(circle.rigging);
        LeftoverBoundary lb{2, b, {}};
        lb.curve.resize(static_cast<size_t>(opts.n));
        for (int m = 0; m < opts.n; ++m) {
            const cpx p =
                circle.center + std::polar(circle.radius, inv.lift(kTwoPi * m / opts.n));
            lb.curve[static_cast<size_t>(m)] = out.right(SpherePoint(p)).value();
        }
        append_label(res.io_labels, s2.io_labels, b);
        out.leftover.push_back(std::move(lb));
    }

    out.result = std::move(res);
    validate(out.result);
    return out;
}

ModuliVector moduli_of_sewn(const SewnSurface& s) { return moduli(s.result); }

}  // namespace weldlab
