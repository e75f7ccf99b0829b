#include "weldlab/welding.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "weldlab/fft.hpp"
#include "weldlab/parallel.hpp"

namespace weldlab {

namespace {

bool power_of_two(int n) { return n >= 8 && (n & (n - 1)) == 0; }

double wrap_pi(double a) {
    a = std::fmod(a + kPi, kTwoPi);
    if (a < 0) a += kTwoPi;
    return a - kPi;
}

// Taylor series on the closed unit disk.
struct DiskSeries {
    std::vector<cpx> coef;  // coef[m] multiplies z^m

    [[nodiscard]] cpx eval(cpx z) const {
        cpx acc = 0.0;
        for (size_t m = coef.size(); m-- > 0;) acc = acc * z + coef[m];
        return acc;
    }
};

// b1 * w + b0 + sum_{m >= 1} neg[m-1] * w^{-m} on the closed exterior disk.
struct ExteriorSeries {
    cpx b1{0.0}, b0{0.0};
    std::vector<cpx> neg;

    [[nodiscard]] cpx eval(cpx w) const {
        const cpx u = 1.0 / w;
        cpx acc = 0.0;
        for (size_t m = neg.size(); m-- > 0;) acc = acc * u + neg[m];
        return b1 * w + b0 + acc * u;
    }
};

// Fourier fits of boundary samples at theta_k = 2 pi k / n. The disk fit
// keeps modes m >= 0 (boundary values of a disk-holomorphic function), the
// exterior fit keeps m <= 1 (holomorphic at infinity with a simple pole);
// discarded modes carry only solver and interpolation noise.
DiskSeries fit_disk_series(std::vector<cpx> samples) {
    const int n = static_cast<int>(samples.size());
    fft_1d(samples, false);
    DiskSeries s;
    s.coef.resize(static_cast<size_t>(n) / 2);
    for (int m = 0; m < n / 2; ++m) s.coef[static_cast<size_t>(m)] = samples[static_cast<size_t>(m)] / static_cast<double>(n);
    return s;
}

ExteriorSeries fit_exterior_series(std::vector<cpx> samples) {
    const int n = static_cast<int>(samples.size());
    fft_1d(samples, false);
    ExteriorSeries s;
    s.b0 = samples[0] / static_cast<double>(n);
    s.b1 = samples[1] / static_cast<double>(n);
    s.neg.resize(static_cast<size_t>(n) / 2 - 1);
    for (int m = 1; m < n / 2; ++m)
        s.neg[static_cast<size_t>(m - 1)] = samples[static_cast<size_t>(n - m)] / static_cast<double>(n);
    return s;
}

// Fill a polar grid from an evaluator.
PlaneMap sampled_polar_map(DomainTag dom, const PolarGrid& pg, std::function<cpx(cpx)> ev,
                           SpherePoint at_inf) {
    PlaneMap out;
    out.domain = dom;
    out.grid = pg;
    out.values.resize(pg.size());
    parallel_for(0, pg.nr, [&](long lo, long hi) {
        for (long i = lo; i < hi; ++i)
            for (int j = 0; j < pg.ntheta; ++j) {
                const int ii = static_cast<int>(i);
                out.values[pg.index(ii, j)] = ev(pg.node(ii, j));
            }
    });
    out.evaluator = std::move(ev);
    out.at_infinity = at_inf;
    return out;
}

PolarGrid disk_grid() { return PolarGrid{48, 256, 0.05, 0.98}; }
PolarGrid exterior_grid() { return PolarGrid{96, 256, 1.02, 8.0}; }

// sup_theta |g^{-1}(f(e^{i theta})) - h(e^{i theta})|: each f-boundary point
// is projected onto g(S^1) by a Gauss-Newton angle solve seeded at the lift,
// and the angular mismatch plus the unprojected remainder is reported.
double boundary_defect(const std::function<cpx(cpx)>& f, const std::function<cpx(cpx)>& g,
                       const CircleMap& h, int n) {
    std::vector<double> defect(static_cast<size_t>(n));
    parallel_for(0, n, [&](long lo, long hi) {
        for (long k = lo; k < hi; ++k) {
            const double theta = kTwoPi * static_cast<double>(k) / n;
            const cpx target = f(std::polar(1.0, theta));
            double phi = h.lift(theta);
            const double dstep = 1e-5;
            cpx r = 0.0, t(1.0, 0.0);
            for (int it = 0; it < 8; ++it) {
                const cpx gw = g(std::polar(1.0, phi));
                t = (g(std::polar(1.0, phi + dstep)) - g(std::polar(1.0, phi - dstep))) /
                    (2.0 * dstep);
                r = gw - target;
                const double tn = std::norm(t);
                if (tn < 1e-30) break;
                const double dphi = -(r.real() * t.real() + r.imag() * t.imag()) / tn;
                phi += dphi;
                if (std::abs(dphi) < 1e-13) break;
            }
            const cpx res = g(std::polar(1.0, phi)) - target;
            const double tangential = std::abs(std::polar(1.0, phi) - h(std::polar(1.0, theta)));
            const double leftover = std::abs(res) / std::max(std::abs(t), 1e-12);
            defect[static_cast<size_t>(k)] = tangential + leftover;
        }
    });
    return *std::max_element(defect.begin(), defect.end());
}

WeldingPair finish_pair(std::function<cpx(cpx)> fe, std::function<cpx(cpx)> ge,
                        SpherePoint g_at_inf, const Mobius& certificate, const CircleMap& h,
                        int n, double tol) {
    WeldingPair out;
    out.f = sampled_polar_map(DomainTag::disk, disk_grid(), fe, SpherePoint(cpx(0.0)));
    out.g = sampled_polar_map(DomainTag::exterior_disk, exterior_grid(), ge, g_at_inf);
    out.omega_boundary.resize(static_cast<size_t>(n));
    for (int k = 0; k < n; ++k)
        out.omega_boundary[static_cast<size_t>(k)] = out.f.evaluator(std::polar(1.0, kTwoPi * k / n));
    out.normalization = certificate;
    out.residual = boundary_defect(out.f.evaluator, out.g.evaluator, h, n);
    if (!(out.residual <= tol)) {
        char msg[160];
        std::snprintf(msg, sizeof msg, "welding residual %.3e exceeds tolerance %.3e",
                      out.residual, tol);
        throw NumericError(msg);
    }
    return out;
}

}  // namespace

WeldingPair weld(const CircleMap& h_in, const WeldOptions& opts) {
    if (!power_of_two(opts.n)) throw InputError("weld sample count must be a power of two >= 8");
    const CircleMap h = classify_exact_kind(h_in);

    if (h.kind() == MapKind::identity) {
        auto ident = [](cpx z) { return z; };
        return finish_pair(ident, ident, SpherePoint::infinity(), Mobius::identity(), h, opts.n,
                           opts.tol);
    }
    if (h.kind() == MapKind::mobius) {
        // The extension of a circle-preserving Mobius map is itself, so the
        // solved sphere map is the identity: f = id on the disk and
        // g = h^{-1} on the exterior, both exact.
        const Mobius minv = h.mobius_matrix().inverse();
        auto fe = [](cpx z) { return z; };
        auto ge = [minv](cpx w) { return minv.apply_finite(w); };
        return finish_pair(fe, ge, minv.apply(SpherePoint::infinity()), Mobius::identity(), h,
                           opts.n, opts.tol);
    }

    const PlaneMap ext = disk_extend(h, opts.extension);
    const BeltramiField mu = beltrami_of_map(ext);
    auto [w_map, rep] = solve_beltrami(mu, NormalizationTag::fix_0_1_inf, opts.solver);

    const CircleMap hinv = invert(h);
    const int n = opts.n;
    std::vector<cpx> fs(static_cast<size_t>(n)), gs(static_cast<size_t>(n));
    parallel_for(0, n, [&](long lo, long hi) {
        for (long k = lo; k < hi; ++k) {
            const double theta = kTwoPi * static_cast<double>(k) / n;
            fs[static_cast<size_t>(k)] = w_map(std::polar(1.0, theta));
            gs[static_cast<size_t>(k)] = w_map(std::polar(1.0, hinv.lift(theta)));
        }
    });
    const DiskSeries fser = fit_disk_series(std::move(fs));
    const ExteriorSeries gser = fit_exterior_series(std::move(gs));

    const SpherePoint img[3] = {SpherePoint(fser.eval(cpx(1.0))), SpherePoint(fser.eval(cpx(0.0))),
                                SpherePoint(fser.eval(cpx(-1.0)))};
    const SpherePoint dst[3] = {SpherePoint(cpx(1.0)), SpherePoint(cpx(0.0)),
                                SpherePoint(cpx(-1.0))};
    const Mobius sigma = Mobius::through(img, dst);

    auto fe = [fser, sigma](cpx z) { return sigma.apply_finite(fser.eval(z)); };
    auto ge = [gser, sigma](cpx w) { return sigma.apply_finite(gser.eval(w)); };
    return finish_pair(fe, ge, sigma.apply(SpherePoint::infinity()), sigma, h, n, opts.tol);
}

double verify_weld(const WeldingPair& pair, const CircleMap& h) {
    const int n = static_cast<int>(pair.omega_boundary.empty() ? 1024 : pair.omega_boundary.size());
    const auto fe = pair.f.evaluator ? pair.f.evaluator : std::function<cpx(cpx)>([&pair](cpx z) {
        return pair.f(z);
    });
    const auto ge = pair.g.evaluator ? pair.g.evaluator : std::function<cpx(cpx)>([&pair](cpx w) {
        return pair.g(w);
    });
    return boundary_defect(fe, ge, h, n);
}

namespace {

// center + w * exp(logcap + sum b_m w^{-m}): the exterior Riemann map in
// logarithmic form, as produced by the conjugation iteration.
struct ExteriorLogSeries {
    cpx center{0.0};
    double logcap = 0.0;
    std::vector<cpx> b;  // b[m-1] multiplies w^{-m}

    [[nodiscard]] cpx eval(cpx w) const {
        const cpx u = 1.0 / w;
        cpx acc = 0.0;
        for (size_t m = b.size(); m-- > 0;) acc = acc * u + b[m];
        return center + w * std::exp(logcap + acc * u);
    }
};

}  // namespace

std::pair<CircleMap, WeldingPair> synthesize_h(const std::function<cpx(cpx)>& f0,
                                               const SynthOptions& opts) {
    const int n = opts.n;
    if (!power_of_two(n)) throw InputError("synthesis sample count must be a power of two >= 8");

    const cpx center = f0(cpx(0.0));
    std::vector<cpx> curve(static_cast<size_t>(n));
    std::vector<double> tau(static_cast<size_t>(n));
    double prev_raw = 0.0;
    for (int k = 0; k < n; ++k) {
        const cpx p = f0(std::polar(1.0, kTwoPi * k / n));
        curve[static_cast<size_t>(k)] = p;
        const cpx rel = p - center;
        if (std::abs(rel) < 1e-12)
            throw InputError("boundary curve passes through its own center point");
        const double raw = std::arg(rel);
        tau[static_cast<size_t>(k)] = k == 0 ? raw : tau[static_cast<size_t>(k - 1)] + wrap_pi(raw - prev_raw);
        prev_raw = raw;
    }
    const double closing = tau[0] + kTwoPi - (tau[static_cast<size_t>(n - 1)] +
                                              wrap_pi(std::arg(curve[0] - center) - prev_raw));
    if (std::abs(closing) > 1e-6)
        throw InputError("boundary curve does not wind once about its center");

    const CircleMap tau_map = [&] {
        try {
            return CircleMap::from_lift_samples(tau);
        } catch (const InputError&) {
            throw InputError("boundary curve is not starlike about f0(0); synthesis rejected");
        }
    }();
    const CircleMap tau_inv = invert(tau_map);

    // Log-radius of the curve at polar angle omega about its center.  The
    // cubic inverse seeds a Newton polish against f0 itself; leaning on the
    // interpolant alone leaves ~1e-9 noise in the series coefficients.
    const auto sample_log_radius = [&](double omega) {
        double th = tau_inv.lift(omega);
        for (int s = 0; s < 12; ++s) {
            const cpx rel = f0(std::polar(1.0, th)) - center;
            const double err = wrap_pi(std::arg(rel) - omega);
            if (std::abs(err) < 1e-14) break;
            const double d = 1e-6;
            const cpx relp = f0(std::polar(1.0, th + d)) - center;
            const double slope = wrap_pi(std::arg(relp) - std::arg(rel)) / d;
            if (!(std::abs(slope) > 1e-6)) break;
            th -= err / slope;
        }
        return std::log(std::abs(f0(std::polar(1.0, th)) - center));
    };

    // Conjugation iteration for the boundary correspondence of the exterior
    // Riemann map: Theta(phi) = phi + (conjugate of log-radius along Theta).
    std::vector<double> theta_corr(static_cast<size_t>(n));
    for (int k = 0; k < n; ++k) theta_corr[static_cast<size_t>(k)] = kTwoPi * k / n;
    std::vector<cpx> u(static_cast<size_t>(n));
    int it = 0;
    for (; it < opts.max_iter; ++it) {
        for (int k = 0; k < n; ++k)
            u[static_cast<size_t>(k)] = sample_log_radius(theta_corr[static_cast<size_t>(k)]);
        fft_1d(u, false);
        conjugate_spectrum(u, false);
        fft_1d(u, true);
        double change = 0.0;
        for (int k = 0; k < n; ++k) {
            const double next = kTwoPi * k / n + u[static_cast<size_t>(k)].real();
            change = std::max(change, std::abs(next - theta_corr[static_cast<size_t>(k)]));
            theta_corr[static_cast<size_t>(k)] = next;
        }
        if (change < opts.tol) break;
    }
    if (it >= opts.max_iter)
        throw NumericError("exterior-map conjugation iteration did not converge");

    ExteriorLogSeries ext;
    ext.center = center;
    TrigSeries v_fit;  // conjugate field of the converged correspondence
    {
        for (int k = 0; k < n; ++k)
            u[static_cast<size_t>(k)] = sample_log_radius(theta_corr[static_cast<size_t>(k)]);
        fft_1d(u, false);
        ext.logcap = u[0].real() / n;
        ext.b.resize(static_cast<size_t>(n) / 2 - 1);
        for (int m = 1; m < n / 2; ++m)
            ext.b[static_cast<size_t>(m - 1)] = 2.0 * u[static_cast<size_t>(n - m)] / static_cast<double>(n);
        v_fit.modes.assign(u.begin(), u.end());
        conjugate_spectrum(v_fit.modes, false);
        v_fit.n = n;
    }

    // Invert Theta(phi) = phi + v(phi) per node by Newton against the fitted
    // series, so the correspondence samples carry no interpolation error.
    std::vector<double> phi(static_cast<size_t>(n));
    for (int k = 0; k < n; ++k) {
        double p = tau[static_cast<size_t>(k)];
        bool done = false;
        for (int step = 0; step < 60 && !done; ++step) {
            const double err = p + v_fit.eval(p) - tau[static_cast<size_t>(k)];
            if (std::abs(err) < 1e-14) {
                done = true;
                break;
            }
            const double slope = 1.0 + v_fit.eval_deriv(p);
            if (!(slope > 0.05))
                throw NumericError("conjugation iteration produced a non-monotone correspondence");
            p -= std::clamp(err / slope, -0.5, 0.5);
        }
        if (!done) throw NumericError("boundary correspondence inversion did not converge");
        phi[static_cast<size_t>(k)] = p;
    }
    const CircleMap h = [&] {
        try {
            return classify_exact_kind(CircleMap::from_lift_samples(phi));
        } catch (const InputError&) {
            throw NumericError("conjugation iteration produced a non-monotone correspondence");
        }
    }();

    const SpherePoint img[3] = {SpherePoint(f0(cpx(1.0))), SpherePoint(f0(cpx(0.0))),
                                SpherePoint(f0(cpx(-1.0)))};
    const SpherePoint dst[3] = {SpherePoint(cpx(1.0)), SpherePoint(cpx(0.0)),
                                SpherePoint(cpx(-1.0))};
    const Mobius sigma = Mobius::through(img, dst);

    auto fe = [f0, sigma](cpx z) { return sigma.apply_finite(f0(z)); };
    auto ge = [ext, sigma](cpx w) { return sigma.apply_finite(ext.eval(w)); };
    WeldingPair pair = finish_pair(fe, ge, sigma.apply(SpherePoint::infinity()), sigma, h, n,
                                   std::numeric_limits<double>::infinity());
    return {h, pair};
}

}  // namespace weldlab
