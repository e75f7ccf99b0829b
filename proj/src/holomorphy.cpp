#include "weldlab/holomorphy.hpp"

#include <algorithm>
#include <cmath>

#include "weldlab/beltrami_solver.hpp"

namespace weldlab {

namespace {

double smooth01(double s) {
    s = std::clamp(s, 0.0, 1.0);
    return s * s * (3.0 - 2.0 * s);
}

BeltramiField shape_field(int n, double half_side, const std::function<cpx(cpx)>& shape,
                          double support_radius) {
    const RectGrid grid = RectGrid::square(n, half_side);
    BeltramiField out;
    out.grid = grid;
    out.mu.resize(grid.size());
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i)
            out.mu[grid.index(i, j)] = shape(grid.node(i, j));
    out.sup_norm = BeltramiField::computed_sup(out.mu);
    out.support_radius = support_radius;
    return out;
}

BeltramiField scaled(const BeltramiField& nu, cpx t) {
    BeltramiField out = nu;
    for (auto& v : out.mu) v *= t;
    out.sup_norm = nu.sup_norm * std::abs(t);
    return out;
}

RiggedSphere standard_piece(std::vector<SpherePoint> marked, CircleMap psi) {
    RiggedSphere s;
    s.model = SphereModel::border;
    s.marked = std::move(marked);
    BoundaryCircle b;
    b.rigging = std::move(psi);
    s.boundaries.push_back(std::move(b));
    return s;
}

// Direction bump for the rigging path, supported in an annulus of the
// exterior piece away from the boundary circle.
cpx rigging_shape(cpx z) {
    const cpx c0(1.7, 0.25);
    const double r = std::abs(z - c0);
    return cpx(0.8, 0.35) * std::exp(-8.0 * r * r) * smooth01((0.35 - r) / 0.1);
}

struct RiggedDirection {
    CircleMap psi = CircleMap::identity();
    cpx marked{2.0, 0.0};
};

// t * shape outside the disk plus its circle reflection inside: the
// normalized solution of this field maps the unit circle to itself, and its
// dilatation on the exterior piece is exactly t * shape.
BeltramiField symmetrized_direction(cpx t) {
    const int n = 288;
    const RectGrid grid = RectGrid::square(n, 2.15);
    BeltramiField out;
    out.grid = grid;
    out.mu.resize(grid.size());
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) {
            const cpx z = grid.node(i, j);
            const double r = std::abs(z);
            cpx v(0.0);
            if (r > 1.0) {
                v = t * rigging_shape(z);
            } else if (r > 0.1) {
                const cpx ratio = z / std::conj(z);
                v = ratio * ratio * std::conj(t * rigging_shape(1.0 / std::conj(z)));
            }
            out.mu[grid.index(i, j)] = v;
        }
    out.sup_norm = BeltramiField::computed_sup(out.mu);
    out.support_radius = 2.1;
    return out;
}

// Rigging from a Beltrami direction supported on the piece side. G_t is the
// circle-preserving solution whose exterior dilatation is t*nu; the deformed
// piece carries the rigging (G_t|S^1)^{-1} and the marked point G_t(2).
// Sewing against an identity piece then glues the welded maps into one plane
// map with coefficient t*nu outside the disk and zero inside, i.e. a mobius
// times the normalized solution W_t of t*nu alone, and the moduli become
// cross-ratios of W_t at fixed points: the reflection's conjugate-linear
// part cancels between rigging and marked point, leaving holomorphic
// dependence on t.
RiggedDirection rigging_from_direction(const FamilySpec& spec, cpx t) {
    SolveOptions so;
    so.grid_n = spec.grid_n;
    const auto [g, rep] =
        solve_beltrami(symmetrized_direction(t), NormalizationTag::fix_0_1_inf, so);

    const int n = spec.sew.n;
    std::vector<double> lift(static_cast<size_t>(n));
    double prev_raw = 0.0;
    for (int k = 0; k < n; ++k) {
        const cpx img = g(std::polar(1.0, kTwoPi * k / n));
        if (std::abs(std::abs(img) - 1.0) > 0.2)
            throw NumericError("rigging family boundary left the unit circle");
        const double raw = std::arg(img);
        const double step = raw - prev_raw;
        lift[static_cast<size_t>(k)] =
            k == 0 ? raw
                   : lift[static_cast<size_t>(k - 1)] + step - kTwoPi * std::round(step / kTwoPi);
        prev_raw = raw;
    }

    RiggedDirection out;
    try {
        const CircleMap forward = CircleMap::from_lift_samples(lift);
        const CircleMap lazy = invert(forward);
        std::vector<double> inv_lift(static_cast<size_t>(n));
        for (int k = 0; k < n; ++k)
            inv_lift[static_cast<size_t>(k)] = lazy.lift(kTwoPi * k / n);
        out.psi = CircleMap::from_lift_samples(inv_lift);
    } catch (const InputError&) {
        throw NumericError("rigging family produced a non-monotone boundary correspondence");
    }
    out.marked = g(cpx(2.0, 0.0));
    if (std::abs(out.marked) <= 1.0)
        throw NumericError("rigging family marked point left the exterior piece");
    return out;
}

}  // namespace

FamilySpec marked_point_family() {
    FamilySpec spec;
    spec.kind = FamilyKind::marked_point;
    spec.t_radius = 0.3;
    return spec;
}

FamilySpec beltrami_path_family() {
    FamilySpec spec;
    spec.kind = FamilyKind::beltrami_path;
    spec.t_radius = 0.3;
    spec.grid_n = 192;
    spec.nu = shape_field(256, 2.6,
                          [](cpx z) {
                              const double r = std::abs(z);
                              return cpx(std::exp(-2.0 * r * r) * smooth01((2.5 - r) / 0.5), 0.0);
                          },
                          2.5);
    return spec;
}

FamilySpec rigging_path_family() {
    FamilySpec spec;
    spec.kind = FamilyKind::rigging_path;
    spec.t_radius = 0.3;
    spec.grid_n = 224;
    spec.nu = shape_field(288, 2.15, rigging_shape, 2.1);
    spec.sew.n = 256;
    spec.sew.seam_tol = 5e-2;  // certification runs at coarse resolution
    spec.sew.weld.solver.grid_n = 192;
    spec.sew.weld.extension.nr = 96;
    spec.sew.weld.extension.ntheta = 256;
    return spec;
}

FamilySpec synthetic_family(SyntheticForm form) {
    FamilySpec spec;
    spec.kind = FamilyKind::synthetic;
    spec.synth = form;
    return spec;
}

cpx family_eval(const FamilySpec& spec, cpx t) {
    if (std::abs(t) > spec.t_radius + 1e-12)
        throw InputError("family parameter outside the declared domain");
    switch (spec.kind) {
        case FamilyKind::synthetic:
            switch (spec.synth) {
                case SyntheticForm::linear: return 6.0 + 3.0 * t;
                case SyntheticForm::cubic: {
                    const cpx s = t - cpx(0.2, 0.1);
                    return s * s * s + 2.0;
                }
                case SyntheticForm::conjugate: return std::conj(t);
            }
            throw InputError("unknown synthetic form");
        case FamilyKind::marked_point: {
            auto s1 = standard_piece({SpherePoint(cpx(2.0) + t), SpherePoint::infinity()},
                                     CircleMap::identity());
            auto s2 = standard_piece({SpherePoint(cpx(3.0)), SpherePoint::infinity()},
                                     CircleMap::identity());
            return moduli_of_sewn(sew(s1, 0, s2, 0, spec.sew)).at(0);
        }
        case FamilyKind::beltrami_path: {
            if (!spec.nu) throw InputError("beltrami-path family needs a direction field");
            SolveOptions so;
            so.grid_n = spec.grid_n;
            const auto [f, rep] =
                solve_beltrami(scaled(*spec.nu, t), NormalizationTag::fix_0_1_inf, so);
            return f(spec.probe);
        }
        case FamilyKind::rigging_path: {
            if (!spec.nu) throw InputError("rigging-path family needs a direction field");
            const RiggedDirection rd = rigging_from_direction(spec, t);
            auto s1 = standard_piece({SpherePoint(rd.marked), SpherePoint::infinity()}, rd.psi);
            auto s2 = standard_piece({SpherePoint(cpx(3.0)), SpherePoint::infinity()},
                                     CircleMap::identity());
            return moduli_of_sewn(sew(s1, 0, s2, 0, spec.sew)).at(0);
        }
    }
    throw InputError("unknown family kind");
}

WirtingerPair wirtinger_residual(const FamilySpec& spec, cpx t, double delta) {
    if (!(delta > 0.0)) throw InputError("wirtinger step must be positive");
    const cpx lp = family_eval(spec, t + delta);
    const cpx lm = family_eval(spec, t - delta);
    const cpx lip = family_eval(spec, t + cpx(0.0, delta));
    const cpx lim = family_eval(spec, t - cpx(0.0, delta));
    const cpx la = (lp - lm) / (2.0 * delta);
    const cpx lb = (lip - lim) / (2.0 * delta);
    WirtingerPair out;
    out.d_t = std::abs(0.5 * (la - cpx(0.0, 1.0) * lb));
    out.d_tbar = std::abs(0.5 * (la + cpx(0.0, 1.0) * lb));
    const double scale = std::max({std::abs(lp), std::abs(lm), std::abs(lip), std::abs(lim), 1.0});
    out.below_floor = std::max(std::abs(lp - lm), std::abs(lip - lim)) < 1e-13 * scale;
    return out;
}

std::vector<cpx> square_grid3(double s) {
    std::vector<cpx> grid;
    grid.reserve(9);
    for (double y : {-s, 0.0, s})
        for (double x : {-s, 0.0, s}) grid.emplace_back(x, y);
    return grid;
}

CRReport holomorphy_report(const FamilySpec& spec, const std::vector<cpx>& grid, double delta) {
    if (grid.empty()) throw InputError("holomorphy report needs a nonempty t-grid");
    CRReport report;
    report.delta = delta;
    std::vector<cpx> ts = grid;
    std::sort(ts.begin(), ts.end(), [](cpx a, cpx b) {
        return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
    });
    bool floored = false;
    for (const cpx t : ts) {
        const WirtingerPair wp = wirtinger_residual(spec, t, delta);
        report.rows.push_back({t, wp.d_t, wp.d_tbar});
        report.ratio = std::max(report.ratio, wp.d_tbar / std::max(wp.d_t, kProbeFloor));
        floored = floored || wp.below_floor;
    }
    report.richardson = wirtinger_residual(spec, ts[ts.size() / 2], delta / 2.0);
    floored = floored || report.richardson.below_floor;
    if (floored)
        report.warning = "finite differences at the numeric noise floor; derivative "
                         "estimates unreliable at this step";
    return report;
}

}  // namespace weldlab
