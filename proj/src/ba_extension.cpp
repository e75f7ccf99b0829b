#include "weldlab/ba_extension.hpp"

#include <algorithm>
#include <cmath>

#include "weldlab/finite_diff.hpp"
#include "weldlab/parallel.hpp"

namespace weldlab {
namespace {

// one composite-Simpson pass over t in [0,1] for both averages
std::pair<double, double> simpson_pass(const std::function<double(double)>& h, double x,
                                       double y, int intervals) {
    const double dt = 1.0 / intervals;
    double su = 0.0, sv = 0.0;
    for (int k = 0; k <= intervals; ++k) {
        const double t = k * dt;
        const double w = (k == 0 || k == intervals) ? 1.0 : (k % 2 ? 4.0 : 2.0);
        const double a = h(x + t * y), b = h(x - t * y);
        su += w * (a + b);
        sv += w * (a - b);
    }
    return {su * dt / 6.0, sv * dt / 6.0};  // already includes the 1/2 average
}

cpx ba_point(const std::function<double(double)>& h, double x, double y) {
    if (y == 0.0) return {h(x), 0.0};
    auto [u, v] = simpson_pass(h, x, y, 64);
    for (int intervals = 128; intervals <= 1024; intervals *= 2) {
        auto [u2, v2] = simpson_pass(h, x, y, intervals);
        const bool done = std::fabs(u2 - u) < 1e-10 && std::fabs(v2 - v) < 1e-10;
        u = u2;
        v = v2;
        if (done) break;
    }
    return {u, v};
}

double smoothstep(double t) {
    t = std::clamp(t, 0.0, 1.0);
    return t * t * (3.0 - 2.0 * t);
}

}  // namespace

cpx ba_extend_point(const std::function<double(double)>& h_line, cpx z) {
    if (z.imag() < 0.0) throw InputError("extension point below the real axis");
    return ba_point(h_line, z.real(), z.imag());
}

PlaneMap ba_extend(const std::function<double(double)>& h_line, const RectGrid& grid) {
    if (grid.y0 < 0.0) throw InputError("grid reaches below the real axis");
    PlaneMap f;
    f.domain = DomainTag::upper_half_plane;
    f.grid = grid;
    f.values.resize(grid.size());
    parallel_for(0, grid.ny, [&](long j0, long j1) {
        for (long j = j0; j < j1; ++j)
            for (int i = 0; i < grid.nx; ++i) {
                const cpx z = grid.node(i, static_cast<int>(j));
                f.values[grid.index(i, static_cast<int>(j))] = ba_point(h_line, z.real(), z.imag());
            }
    });
    f.evaluator = [h_line](cpx z) { return ba_extend_point(h_line, z); };
    return f;
}

namespace {

template <class Fn>
void for_each_node(const GridSpec& grid, Fn&& fn) {
    if (std::holds_alternative<RectGrid>(grid)) {
        const auto& g = std::get<RectGrid>(grid);
        for (int j = 0; j < g.ny; ++j)
            for (int i = 0; i < g.nx; ++i) fn(i, j, g.index(i, j));
    } else {
        const auto& g = std::get<PolarGrid>(grid);
        for (int i = 0; i < g.nr; ++i)
            for (int j = 0; j < g.ntheta; ++j) fn(i, j, g.index(i, j));
    }
}

}  // namespace

BeltramiField beltrami_of_map(const PlaneMap& f) {
    BeltramiField field;
    field.grid = f.grid;
    field.mu.resize(f.values.size());
    double support = 0.0;
    for_each_node(f.grid, [&](int i, int j, size_t idx) {
        const fd::Wirtinger d = fd::derivs(f.grid, f.values, i, j);
        const cpx mu = d.fzbar / d.fz;
        if (!(std::abs(mu) < 1.0))
            throw NumericError("map is not quasiconformal at this resolution (|mu| >= 1)");
        field.mu[idx] = mu;
        if (std::abs(mu) > 1e-13) {
            const cpx z = std::holds_alternative<RectGrid>(f.grid)
                              ? std::get<RectGrid>(f.grid).node(i, j)
                              : std::get<PolarGrid>(f.grid).node(i, j);
            support = std::max(support, std::abs(z));
        }
    });
    field.sup_norm = BeltramiField::computed_sup(field.mu);
    field.support_radius = support;
    return field;
}

double min_interior_jacobian(const PlaneMap& f) {
    double mn = std::numeric_limits<double>::infinity();
    for_each_node(f.grid, [&](int i, int j, size_t) {
        if (std::holds_alternative<RectGrid>(f.grid)) {
            const auto& g = std::get<RectGrid>(f.grid);
            if (i == 0 || j == 0 || i == g.nx - 1 || j == g.ny - 1) return;
            const fd::Wirtinger d = fd::rect_derivs(g, f.values, i, j);
            mn = std::min(mn, std::norm(d.fz) - std::norm(d.fzbar));
        } else {
            const auto& g = std::get<PolarGrid>(f.grid);
            if (i == 0 || i == g.nr - 1) return;
            const fd::Wirtinger d = fd::polar_derivs(g, f.values, i, j);
            mn = std::min(mn, std::norm(d.fz) - std::norm(d.fzbar));
        }
    });
    return mn;
}

namespace {

constexpr double kBlendInner = 3.0, kBlendOuter = 4.0;

// Exterior-disk extension evaluator for a genuinely sampled circle map. The
// lift is itself an increasing line homeomorphism commuting with
// x -> x + 2 pi, so its Beurling-Ahlfors extension F descends through the
// exponential cover after reflection across the real axis:
//   E(r e^{i theta}) = exp(i * conj(F(theta + i ln r))).
// Im F > 0 off the axis and grows like (ln r)/2, so E genuinely fixes
// infinity, restricts to h on the circle, and is exactly rotation
// equivariant. (Conjugating through a Cayley map instead would pin the
// extension to the half-plane fixed point of F, which the averaged formula
// does not have, and the reflected map then fails to fix infinity.)
class SampledDiskExtension {
public:
    explicit SampledDiskExtension(CircleMap h) : h_(std::move(h)) {}

    cpx operator()(cpx z) const {
        const double r = std::abs(z);
        if (r < 1.0 - 1e-12) throw InputError("exterior-disk extension sampled inside the disk");
        if (r >= kBlendOuter) return z;
        const double theta = std::arg(z);
        if (r <= 1.0 + 1e-12) return std::polar(1.0, h_.lift(theta));
        const cpx f = ba_point([this](double x) { return h_.lift(x); }, theta, std::log(r));
        // exp(i * conj(F)): modulus e^{Im F} >= 1, argument Re F
        if (r <= kBlendInner) return std::polar(std::exp(f.imag()), f.real());
        // C1 log-polar blend to the identity on the outer collar; Re F - theta
        // is 2 pi periodic, so the angular part crosses the branch cut cleanly
        const double s = smoothstep((r - kBlendInner) / (kBlendOuter - kBlendInner));
        const double mod = (1.0 - s) * f.imag() + s * std::log(r);
        const double ang = theta + (1.0 - s) * (f.real() - theta);
        return std::polar(std::exp(mod), ang);
    }

private:
    CircleMap h_;
};

}  // namespace

PlaneMap disk_extend(const CircleMap& h, const DiskExtendOptions& opts) {
    const CircleMap snapped = classify_exact_kind(h);
    const PolarGrid grid{opts.nr, opts.ntheta, 1.0, 4.0};
    PlaneMap out;
    out.domain = DomainTag::exterior_disk;
    out.grid = grid;
    out.values.resize(grid.size());

    if (snapped.kind() == MapKind::identity) {
        out.evaluator = [](cpx z) { return z; };
    } else if (snapped.kind() == MapKind::mobius) {
        const Mobius m = snapped.mobius_matrix();
        out.evaluator = [m](cpx z) { return m.apply_finite(z); };
    } else {
        SampledDiskExtension ext(snapped);
        out.evaluator = [ext](cpx z) { return ext(z); };
    }
    parallel_for(0, grid.nr, [&](long i0, long i1) {
        for (long i = i0; i < i1; ++i)
            for (int j = 0; j < grid.ntheta; ++j)
                out.values[grid.index(static_cast<int>(i), j)] =
                    out.evaluator(grid.node(static_cast<int>(i), j));
    });
    return out;
}

}  // namespace weldlab
