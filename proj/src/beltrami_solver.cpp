#include "weldlab/beltrami_solver.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <memory>
#include <mutex>

#include "weldlab/fft.hpp"
#include "weldlab/finite_diff.hpp"
#include "weldlab/parallel.hpp"

namespace weldlab {

namespace {

// Integrals of the Cauchy and Beurling kernels over one axis-aligned square
// cell of side c centered at the origin. With d outside the cell boundary,
//   integral over the cell of dA(v) / (d - v)
//     = (1/2i) * contour integral of conj(v) / (d - v) dv  (+ pi*conj(d) if d
//       lies strictly inside the cell),
// and each straight segment from a to b contributes
//   conj(a) * Lg + conj(q) * ((p/q) * Lg - 1),   q = b - a, p = d - a,
//   Lg = log((d - a)/(d - b))  (principal branch; valid off the segment).
// The Beurling kernel is the d-derivative of the same contour sum. Beyond
// 8 cells the moment expansion c^2/d + m4/d^5 (m4 = -c^6/60) is used; its
// relative error there is below 1e-8.
class CellKernel {
public:
    CellKernel() = default;
    explicit CellKernel(double side) : c_(side) {
        const double s = 0.5 * side;
        corners_ = {cpx(-s, -s), cpx(s, -s), cpx(s, s), cpx(-s, s)};
        far2_ = (8.0 * side) * (8.0 * side);
        c2_ = side * side;
        m4_ = -c2_ * c2_ * c2_ / 60.0;
    }

    // (1/pi) * integral of dA(v) / (d - v) over the cell
    [[nodiscard]] cpx cauchy(cpx d) const {
        if (std::norm(d) > far2_) {
            const cpx w = 1.0 / d, w2 = w * w;
            return (c2_ * w + m4_ * w * w2 * w2) / kPi;
        }
        cpx k = boundary(d);
        if (std::abs(d.real()) < 0.5 * c_ && std::abs(d.imag()) < 0.5 * c_)
            k += kPi * std::conj(d);
        return k / kPi;
    }

    // (1/pi) * d/dd of the same integral (principal value across the cell)
    [[nodiscard]] cpx beurling(cpx d) const {
        if (std::norm(d) > far2_) {
            const cpx w = 1.0 / d, w2 = w * w;
            return (-c2_ * w2 - 5.0 * m4_ * w2 * w2 * w2) / kPi;
        }
        return boundary_dz(d) / kPi;
    }

    [[nodiscard]] double side() const { return c_; }

private:
    [[nodiscard]] cpx boundary(cpx d) const {
        cpx tot = 0.0;
        for (int k = 0; k < 4; ++k) {
            const cpx a = corners_[k], b = corners_[(k + 1) % 4];
            const cpx q = b - a, p = d - a, pb = d - b;
            const cpx lg = std::log(p / pb);
            tot += std::conj(a) * lg + std::conj(q) * ((p / q) * lg - 1.0);
        }
        return tot / cpx(0.0, 2.0);
    }

    [[nodiscard]] cpx boundary_dz(cpx d) const {
        cpx tot = 0.0;
        for (int k = 0; k < 4; ++k) {
            const cpx a = corners_[k], b = corners_[(k + 1) % 4];
            const cpx q = b - a, p = d - a, pb = d - b;
            const cpx lg = std::log(p / pb);
            tot += std::conj(a) * (1.0 / p - 1.0 / pb) + (std::conj(q) / q) * (lg + 1.0 - p / pb);
        }
        return tot / cpx(0.0, 2.0);
    }

    double c_ = 1.0;
    std::array<cpx, 4> corners_{};
    double far2_ = 0.0, c2_ = 1.0, m4_ = 0.0;
};

// Spectra of the cellwise kernel tables on the zero-padded 2n x 2n grid, so
// grid-to-grid transforms become one multiply per mode. Cached per grid
// geometry: a family of solves (resolution studies, parameter paths) reuses
// one table.
struct ConvTables {
    int n = 0;
    std::vector<cpx> khat_cauchy, khat_beurling;
};

std::shared_ptr<const ConvTables> conv_tables(int n, double step) {
    static std::map<std::pair<int, long long>, std::shared_ptr<const ConvTables>> cache;
    static std::mutex mx;
    const std::pair<int, long long> key{n, std::llround(step * 1e15)};
    {
        std::lock_guard<std::mutex> lock(mx);
        const auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }

    const int m = 2 * n;
    auto tab = std::make_shared<ConvTables>();
    tab->n = n;
    tab->khat_cauchy.resize(static_cast<size_t>(m) * m);
    tab->khat_beurling.resize(static_cast<size_t>(m) * m);
    const CellKernel ck(step);
    parallel_for(0, m, [&](long lo, long hi) {
        for (long jj = lo; jj < hi; ++jj) {
            const int dj = jj < n ? static_cast<int>(jj) : static_cast<int>(jj) - m;
            for (int ii = 0; ii < m; ++ii) {
                const int di = ii < n ? ii : ii - m;
                const cpx d(step * di, step * dj);
                const size_t idx = static_cast<size_t>(jj) * m + ii;
                tab->khat_cauchy[idx] = ck.cauchy(d);
                tab->khat_beurling[idx] = ck.beurling(d);
            }
        }
    });
    Fft2D fft(m);
    fft.forward(tab->khat_cauchy);
    fft.forward(tab->khat_beurling);

    std::lock_guard<std::mutex> lock(mx);
    if (cache.size() > 4) cache.clear();
    cache.emplace(key, tab);
    return tab;
}

// Beurling multiplier conj(m)/m on integer frequencies, mode 0 annihilated.
// The symbol is even in m, so the aliasing convention at the Nyquist row is
// immaterial.
void apply_beurling_multiplier(std::vector<cpx>& hat, int n) {
    for (int ky = 0; ky < n; ++ky) {
        const int my = ky <= n / 2 ? ky : ky - n;
        for (int kx = 0; kx < n; ++kx) {
            const int mx = kx <= n / 2 ? kx : kx - n;
            const size_t idx = static_cast<size_t>(ky) * n + kx;
            if (mx == 0 && my == 0) {
                hat[idx] = 0.0;
            } else {
                const cpx m(static_cast<double>(mx), static_cast<double>(my));
                hat[idx] *= std::conj(m) / m;
            }
        }
    }
}

// Cyclic convolution of the n x n field h with a kernel spectrum on the
// zero-padded 2n grid; returns the n x n block, which is the exact aperiodic
// convolution.
std::vector<cpx> padded_conv(const std::vector<cpx>& h, int n, const std::vector<cpx>& khat,
                             Fft2D& fft_m) {
    const int m = 2 * n;
    std::vector<cpx> buf(static_cast<size_t>(m) * m, cpx(0.0));
    for (int j = 0; j < n; ++j)
        std::copy(h.begin() + static_cast<size_t>(j) * n, h.begin() + static_cast<size_t>(j + 1) * n,
                  buf.begin() + static_cast<size_t>(j) * m);
    fft_m.forward(buf);
    for (size_t i = 0; i < buf.size(); ++i) buf[i] *= khat[i];
    fft_m.inverse(buf);
    std::vector<cpx> out(static_cast<size_t>(n) * n);
    for (int j = 0; j < n; ++j)
        std::copy(buf.begin() + static_cast<size_t>(j) * m, buf.begin() + static_cast<size_t>(j) * m + n,
                  out.begin() + static_cast<size_t>(j) * n);
    return out;
}

// Off-grid Cauchy transform of the cell-constant density: direct sum over
// the cells carrying nonzero values.
struct CauchySum {
    std::vector<cpx> centers;
    std::vector<cpx> weights;
    double step = 0.0, x0 = 0.0, y0 = 0.0;
    CellKernel kernel;

    [[nodiscard]] cpx eval(cpx z) const {
        // The segment formulas are singular on the lattice of cell-edge
        // lines; points that close get a deterministic sub-resolution nudge.
        const auto off_edges = [this](double t, double origin) {
            const double u = (t - origin) / step - 0.5;
            const double fr = u - std::floor(u);
            if (fr < 1e-12 || fr > 1.0 - 1e-12) return t + 1e-9 * step;
            return t;
        };
        const cpx p(off_edges(z.real(), x0), off_edges(z.imag(), y0));
        cpx acc = 0.0;
        for (size_t i = 0; i < centers.size(); ++i) acc += weights[i] * kernel.cauchy(p - centers[i]);
        return acc;
    }
};

}  // namespace

double residual(const PlaneMap& f, const BeltramiField& mu,
                const std::function<bool(cpx)>& region) {
    if (f.values.empty() || mu.mu.empty())
        throw InputError("residual: map and coefficient must carry grid samples");
    double worst = 0.0;
    const auto defect = [&](cpx z, const fd::Wirtinger& d) {
        const double v = std::abs(d.fzbar - mu.at(z) * d.fz) / (1.0 + std::abs(d.fz));
        worst = std::max(worst, v);
    };
    if (std::holds_alternative<RectGrid>(f.grid)) {
        const auto& g = std::get<RectGrid>(f.grid);
        for (int j = 1; j < g.ny - 1; ++j)
            for (int i = 1; i < g.nx - 1; ++i) {
                const cpx z = g.node(i, j);
                if (region && !region(z)) continue;
                defect(z, fd::rect_derivs(g, f.values, i, j));
            }
    } else {
        const auto& g = std::get<PolarGrid>(f.grid);
        for (int i = 1; i < g.nr - 1; ++i)
            for (int j = 0; j < g.ntheta; ++j) {
                const cpx z = g.node(i, j);
                if (region && !region(z)) continue;
                defect(z, fd::polar_derivs(g, f.values, i, j));
            }
    }
    return worst;
}

std::pair<PlaneMap, SolveReport> solve_beltrami(const BeltramiField& mu, NormalizationTag norm,
                                                const SolveOptions& opts) {
    if (norm == NormalizationTag::none)
        throw InputError("solver normalization must be hydrodynamic or fix-0-1-inf");
    const int n = opts.grid_n;
    if (n < 16 || n % 2 != 0) throw InputError("solver grid size must be even and at least 16");
    const double radius =
        opts.grid_radius > 0.0 ? opts.grid_radius : std::max(2.0, mu.support_radius);
    if (mu.support_radius > radius + 1e-9)
        throw InputError("beltrami coefficient support exceeds the solver grid radius");
    const RectGrid grid = RectGrid::square(n, 2.0 * radius);

    std::vector<cpx> mug(grid.size());
    parallel_for(0, n, [&](long lo, long hi) {
        for (long j = lo; j < hi; ++j)
            for (int i = 0; i < n; ++i)
                mug[grid.index(i, static_cast<int>(j))] = mu.at(grid.node(i, static_cast<int>(j)));
    });
    double sup = 0.0;
    for (const cpx& v : mug) sup = std::max(sup, std::abs(v));
    if (sup > 0.9 + 1e-12)
        throw InputError("beltrami solver contract violated: sup|mu| exceeds 0.9");

    PlaneMap f;
    f.domain = DomainTag::sphere;
    f.grid = grid;
    f.normalization = norm;
    SolveReport rep;
    rep.normalization = norm;

    if (sup < 1e-15) {
        f.values.resize(grid.size());
        for (int j = 0; j < n; ++j)
            for (int i = 0; i < n; ++i) f.values[grid.index(i, j)] = grid.node(i, j);
        f.evaluator = [](cpx z) { return z; };
        return {std::move(f), rep};
    }

    // Multiplier-phase Neumann iteration on the periodized square.
    std::vector<cpx> h = mug, th;
    Fft2D fft_n(n);
    double change = std::numeric_limits<double>::infinity();
    while (rep.iterations < opts.max_iter) {
        th = h;
        fft_n.forward(th);
        apply_beurling_multiplier(th, n);
        fft_n.inverse(th);
        change = 0.0;
        for (size_t i = 0; i < h.size(); ++i) {
            const cpx next = mug[i] * (th[i] + 1.0);
            change = std::max(change, std::abs(next - h[i]));
            h[i] = next;
        }
        ++rep.iterations;
        rep.sup_changes.push_back(change);
        if (change < opts.tol) break;
    }
    if (change >= opts.tol) {
        char msg[160];
        std::snprintf(msg, sizeof msg,
                      "beltrami iteration did not converge in %d steps (last sup change %.3e)",
                      opts.max_iter, change);
        throw NumericError(msg);
    }

    // Fixed-point sweeps against the free-space transform, then f = z + C(h).
    const auto tables = conv_tables(n, grid.dx);
    Fft2D fft_m(2 * n);
    for (int s = 0; s < opts.free_space_sweeps; ++s) {
        const std::vector<cpx> tf = padded_conv(h, n, tables->khat_beurling, fft_m);
        for (size_t i = 0; i < h.size(); ++i) h[i] = mug[i] * (tf[i] + 1.0);
        ++rep.refinement_sweeps;
    }

    const std::vector<cpx> ch = padded_conv(h, n, tables->khat_cauchy, fft_m);
    f.values.resize(grid.size());
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) {
            const size_t idx = grid.index(i, j);
            f.values[idx] = grid.node(i, j) + ch[idx];
        }

    auto sum = std::make_shared<CauchySum>();
    sum->step = grid.dx;
    sum->x0 = grid.x0;
    sum->y0 = grid.y0;
    sum->kernel = CellKernel(grid.dx);
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) {
            const size_t idx = grid.index(i, j);
            if (std::abs(h[idx]) > 1e-15) {
                sum->centers.push_back(grid.node(i, j));
                sum->weights.push_back(h[idx]);
            }
        }
    f.evaluator = [sum](cpx z) { return z + sum->eval(z); };

    rep.residual = residual(f, mu);

    if (norm == NormalizationTag::fix_0_1_inf) {
        const cpx f0 = f(cpx(0.0)), f1 = f(cpx(1.0));
        if (std::abs(f1 - f0) < 1e-12)
            throw NumericError("normalization degenerate: f(0) and f(1) collide");
        const cpx a = 1.0 / (f1 - f0), b = -f0 / (f1 - f0);
        for (auto& v : f.values) v = a * v + b;
        f.evaluator = [sum, a, b](cpx z) { return a * (z + sum->eval(z)) + b; };
    }
    return {std::move(f), rep};
}

PlaneMap renormalize(const PlaneMap& f, const std::array<SpherePoint, 3>& points) {
    SpherePoint src[3], dst[3];
    for (int k = 0; k < 3; ++k) {
        dst[k] = points[k];
        src[k] = points[k].is_infinite() ? f.at_infinity : SpherePoint(f(points[k].value()));
    }
    Mobius sigma;
    try {
        sigma = Mobius::through(src, dst);
    } catch (const InputError&) {
        throw InputError("renormalize: images of the three points are degenerate");
    }

    PlaneMap out;
    out.domain = f.domain;
    out.grid = f.grid;
    out.values.resize(f.values.size());
    for (size_t i = 0; i < f.values.size(); ++i) out.values[i] = sigma.apply_finite(f.values[i]);
    if (f.evaluator) {
        out.evaluator = [ev = f.evaluator, sigma](cpx z) { return sigma.apply_finite(ev(z)); };
    } else {
        auto base = std::make_shared<PlaneMap>();
        base->domain = f.domain;
        base->grid = f.grid;
        base->values = f.values;
        out.evaluator = [base, sigma](cpx z) { return sigma.apply_finite((*base)(z)); };
    }
    out.at_infinity = sigma.apply(f.at_infinity);

    const bool standard = !points[0].is_infinite() && std::abs(points[0].value()) < 1e-15 &&
                          !points[1].is_infinite() && std::abs(points[1].value() - 1.0) < 1e-15 &&
                          points[2].is_infinite();
    out.normalization = standard ? NormalizationTag::fix_0_1_inf : NormalizationTag::none;
    return out;
}

}  // namespace weldlab
