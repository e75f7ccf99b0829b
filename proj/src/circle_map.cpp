#include "weldlab/circle_map.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace weldlab {
namespace detail {
namespace {

bool power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

class IdentityLift final : public LiftFn {
public:
    double value(double theta) const override { return theta; }
    double derivative(double) const override { return 1.0; }
};

// Lift of lambda (z - p)/(1 - conj(p) z) with |lambda| = 1, |p| < 1:
//   L(theta) = alpha + theta + Arg(1 - p e^{-i theta}) - Arg(1 - conj(p) e^{i theta})
// shifted so L(0) lands in [0, 2 pi).
class MobiusLift final : public LiftFn {
public:
    MobiusLift(cpx lambda, cpx p) : alpha_(std::arg(lambda)), p_(p) {
        shift_ = -kTwoPi * std::floor(raw(0.0) / kTwoPi);
    }
    double value(double theta) const override { return raw(theta) + shift_; }
    double derivative(double theta) const override {
        const cpx den = 1.0 - std::conj(p_) * std::polar(1.0, theta);
        return (1.0 - std::norm(p_)) / std::norm(den);
    }

private:
    double raw(double theta) const {
        const cpx e = std::polar(1.0, theta);
        return alpha_ + theta + std::arg(1.0 - p_ / e) - std::arg(1.0 - std::conj(p_) * e);
    }
    double alpha_;
    cpx p_;
    double shift_ = 0.0;
};

// Periodic piecewise-cubic interpolant of the samples, slopes limited by the
// Fritsch-Carlson rule so monotone data stays monotone.
class SampledLift final : public LiftFn {
public:
    SampledLift(std::vector<double> samples, InterpKind interp)
        : samples_(std::move(samples)), interp_(interp) {
        const int n = static_cast<int>(samples_.size());
        h_ = kTwoPi / n;
        delta_.resize(samples_.size());
        for (int k = 0; k < n; ++k) {
            const double next = (k + 1 < n) ? samples_[k + 1] : samples_[0] + kTwoPi;
            delta_[k] = (next - samples_[k]) / h_;
            if (!(delta_[k] > 0.0))
                throw InputError("circle map lift samples must be strictly increasing");
        }
        if (interp_ == InterpKind::linear) return;
        slope_.resize(samples_.size());
        for (int k = 0; k < n; ++k) slope_[k] = 0.5 * (delta_[(k + n - 1) % n] + delta_[k]);
        for (int k = 0; k < n; ++k) {
            const int k1 = (k + 1) % n;
            const double a = slope_[k] / delta_[k], b = slope_[k1] / delta_[k];
            const double r2 = a * a + b * b;
            if (r2 > 9.0) {
                const double tau = 3.0 / std::sqrt(r2);
                slope_[k] *= tau;
                slope_[k1] *= tau;
            }
        }
    }

    double value(double theta) const override {
        const auto [j, x, branch] = locate(theta);
        if (interp_ == InterpKind::linear) return samples_[j] + delta_[j] * x + branch;
        const double d0 = slope_[j], d1 = slope_[(j + 1) % samples_.size()], de = delta_[j];
        const double c2 = (3.0 * de - 2.0 * d0 - d1) / h_;
        const double c3 = (d0 + d1 - 2.0 * de) / (h_ * h_);
        return samples_[j] + x * (d0 + x * (c2 + x * c3)) + branch;
    }

    double derivative(double theta) const override {
        const auto [j, x, branch] = locate(theta);
        (void)branch;
        if (interp_ == InterpKind::linear) return delta_[j];
        const double d0 = slope_[j], d1 = slope_[(j + 1) % samples_.size()], de = delta_[j];
        const double c2 = (3.0 * de - 2.0 * d0 - d1) / h_;
        const double c3 = (d0 + d1 - 2.0 * de) / (h_ * h_);
        return d0 + x * (2.0 * c2 + x * 3.0 * c3);
    }

private:
    // cell index, offset into the cell, and 2*pi branch correction
    std::tuple<size_t, double, double> locate(double theta) const {
        const double turns = std::floor(theta / kTwoPi);
        double base = theta - kTwoPi * turns;
        int j = static_cast<int>(std::floor(base / h_));
        j = std::clamp(j, 0, static_cast<int>(samples_.size()) - 1);
        return {static_cast<size_t>(j), base - j * h_, kTwoPi * turns};
    }

    std::vector<double> samples_, delta_, slope_;
    InterpKind interp_;
    double h_ = 0.0;
};

class ComposedLift final : public LiftFn {
public:
    ComposedLift(LiftPtr outer, LiftPtr inner) : outer_(std::move(outer)), inner_(std::move(inner)) {}
    double value(double theta) const override { return outer_->value(inner_->value(theta)); }
    double derivative(double theta) const override {
        return outer_->derivative(inner_->value(theta)) * inner_->derivative(theta);
    }

private:
    LiftPtr outer_, inner_;
};

class InverseLift final : public LiftFn {
public:
    explicit InverseLift(LiftPtr base) : base_(std::move(base)), base0_(base_->value(0.0)) {}

    double value(double y) const override {
        // Reduce to the principal window [L(0), L(0) + 2 pi).
        const double turns = std::floor((y - base0_) / kTwoPi);
        const double target = y - kTwoPi * turns;
        double lo = 0.0, hi = kTwoPi;
        for (int it = 0; it < 24; ++it) {
            const double mid = 0.5 * (lo + hi);
            (base_->value(mid) < target ? lo : hi) = mid;
        }
        double x = 0.5 * (lo + hi);
        for (int it = 0; it < 12; ++it) {
            const double f = base_->value(x) - target;
            const double d = base_->derivative(x);
            if (!(d > 1e-14)) break;
            double step = f / d;
            x -= step;
            if (x <= lo || x >= hi) x = std::clamp(x, lo, hi);
            if (std::fabs(step) < 1e-15) break;
        }
        return x + kTwoPi * turns;
    }

    double derivative(double y) const override {
        const double d = base_->derivative(value(y));
        return d > 1e-14 ? 1.0 / d : 1e14;
    }

private:
    LiftPtr base_;
    double base0_;
};

// theta -> -L(-theta)
class InversionConjugateLift final : public LiftFn {
public:
    explicit InversionConjugateLift(LiftPtr base) : base_(std::move(base)) {}
    double value(double theta) const override { return -base_->value(-theta); }
    double derivative(double theta) const override { return base_->derivative(-theta); }

private:
    LiftPtr base_;
};

// Reduce circle-preserving coefficients to canonical (lambda, p).
std::pair<cpx, cpx> canonical_disk_form(const Mobius& m) {
    if (std::abs(m.det()) < 1e-14) throw InputError("möbius coefficients are singular");
    if (std::abs(m.a) < 1e-14 * (std::abs(m.b) + std::abs(m.c) + std::abs(m.d)))
        throw InputError("möbius map does not preserve the unit disk");
    const cpx p = -m.b / m.a;
    if (!(std::abs(p) < 1.0))
        throw InputError("möbius map does not preserve the unit disk");
    const cpx m1 = m.apply_finite(1.0);
    cpx lambda = m1 * (1.0 - std::conj(p)) / (1.0 - p);
    lambda /= std::abs(lambda);
    // Cross-check the canonical form against the raw coefficients.
    for (int k = 0; k < 8; ++k) {
        const cpx z = std::polar(1.0, kTwoPi * k / 8.0 + 0.3);
        const cpx raw = m.apply_finite(z);
        if (std::abs(std::abs(raw) - 1.0) > 1e-9)
            throw InputError("möbius map does not preserve the unit circle");
        const cpx canon = lambda * (z - p) / (1.0 - std::conj(p) * z);
        if (std::abs(raw - canon) > 1e-8)
            throw InputError("möbius map does not preserve orientation on the circle");
    }
    return {lambda, p};
}

}  // namespace
}  // namespace detail

CircleMap CircleMap::wrap(detail::LiftPtr fn, MapKind kind, int n, InterpKind interp) {
    if (!detail::power_of_two(n)) throw InputError("sample count must be a positive power of two");
    CircleMap m;
    m.fn_ = std::move(fn);
    m.kind_ = kind;
    m.n_ = n;
    m.interp_ = interp;
    m.samples_.resize(static_cast<size_t>(n));
    for (int k = 0; k < n; ++k) m.samples_[static_cast<size_t>(k)] = m.fn_->value(kTwoPi * k / n);
    return m;
}

CircleMap CircleMap::identity(int n) {
    return wrap(std::make_shared<detail::IdentityLift>(), MapKind::identity, n,
                InterpKind::monotone_cubic);
}

CircleMap CircleMap::rotation(double alpha, int n) {
    return mobius(Mobius::rotation(alpha), n);
}

CircleMap CircleMap::mobius(const Mobius& m, int n) {
    auto [lambda, p] = detail::canonical_disk_form(m);
    auto out = wrap(std::make_shared<detail::MobiusLift>(lambda, p), MapKind::mobius, n,
                    InterpKind::monotone_cubic);
    out.mobius_ = {lambda, p};
    return out;
}

CircleMap CircleMap::mobius(cpx a, cpx b, cpx c, cpx d, int n) {
    return mobius(Mobius{a, b, c, d}, n);
}

CircleMap CircleMap::from_lift_samples(std::vector<double> lift, InterpKind interp) {
    const int n = static_cast<int>(lift.size());
    if (!detail::power_of_two(n)) throw InputError("sample count must be a positive power of two");
    // keep the caller's node values verbatim: re-evaluating the interpolant at the
    // nodes can land in the neighboring cell and flip low bits, which would make a
    // save/load generation drift
    std::vector<double> nodes = lift;
    auto fn = std::make_shared<detail::SampledLift>(std::move(lift), interp);
    auto out = wrap(std::move(fn), MapKind::sampled, n, interp);
    out.samples_ = std::move(nodes);
    return out;
}

cpx CircleMap::mobius_lambda() const {
    if (!mobius_) throw InputError("not a möbius-kind circle map");
    return mobius_->first;
}

cpx CircleMap::mobius_p() const {
    if (!mobius_) throw InputError("not a möbius-kind circle map");
    return mobius_->second;
}

Mobius CircleMap::mobius_matrix() const {
    if (kind_ == MapKind::identity) return Mobius::identity();
    if (!mobius_) throw InputError("not a möbius-kind circle map");
    return Mobius::disk_automorphism(mobius_->first, mobius_->second);
}

double CircleMap::lift(double theta) const { return fn_->value(theta); }
double CircleMap::lift_derivative(double theta) const { return fn_->derivative(theta); }

CircleMap compose(const CircleMap& m1, const CircleMap& m2) {
    const int n = std::max(m1.n_, m2.n_);
    const auto resampled = [n](const CircleMap& m) {
        if (m.n_ == n) return m;
        CircleMap out = CircleMap::wrap(m.fn_, m.kind_, n, m.interp_);
        out.mobius_ = m.mobius_;
        return out;
    };
    if (m1.kind_ == MapKind::identity) return resampled(m2);
    if (m2.kind_ == MapKind::identity) return resampled(m1);
    const bool closed1 = m1.kind_ == MapKind::mobius, closed2 = m2.kind_ == MapKind::mobius;
    if (closed1 && closed2) return CircleMap::mobius(m1.mobius_matrix().compose(m2.mobius_matrix()), n);
    auto fn = std::make_shared<detail::ComposedLift>(m1.fn_, m2.fn_);
    const InterpKind interp = closed2 ? m1.interp_ : m2.interp_;
    return CircleMap::wrap(std::move(fn), MapKind::sampled, n, interp);
}

CircleMap invert(const CircleMap& m) {
    switch (m.kind_) {
        case MapKind::identity:
            return m;
        case MapKind::mobius:
            return CircleMap::mobius(m.mobius_matrix().inverse(), m.n_);
        case MapKind::sampled:
        default:
            return CircleMap::wrap(std::make_shared<detail::InverseLift>(m.fn_), MapKind::sampled,
                                   m.n_, m.interp_);
    }
}

CircleMap conjugate_by_inversion(const CircleMap& m) {
    switch (m.kind_) {
        case MapKind::identity:
            return m;
        case MapKind::mobius: {
            const Mobius b = m.mobius_matrix();
            return CircleMap::mobius(Mobius{b.d, b.c, b.b, b.a}, m.n_);
        }
        case MapKind::sampled:
        default:
            return CircleMap::wrap(std::make_shared<detail::InversionConjugateLift>(m.fn_),
                                   MapKind::sampled, m.n_, m.interp_);
    }
}

NormalizedCircleMap normalize_three_points(const CircleMap& m) {
    const cpx one(1.0), minus_one(-1.0), i_unit(0.0, 1.0);
    const SpherePoint src[3] = {m(one), m(minus_one), m(i_unit)};
    const SpherePoint dst[3] = {one, minus_one, i_unit};
    const Mobius sigma = Mobius::through(src, dst);
    return {compose(CircleMap::mobius(sigma, m.n()), m), sigma};
}

CircleMap classify_exact_kind(const CircleMap& m) {
    if (m.kind_ != MapKind::sampled) return m;
    const int n = m.n_;
    const auto& s = m.samples_;

    const double off_id = kTwoPi * std::round((s[0] - 0.0) / kTwoPi);
    double dev = 0.0;
    for (int k = 0; k < n; ++k)
        dev = std::max(dev, std::fabs(s[static_cast<size_t>(k)] - kTwoPi * k / n - off_id));
    if (dev <= 1e-12) return CircleMap::identity(n);

    // Fit a möbius map through three sample points and test the rest.
    const int k1 = n / 3, k2 = (2 * n) / 3;
    const SpherePoint src[3] = {cpx(1.0), std::polar(1.0, kTwoPi * k1 / n),
                                std::polar(1.0, kTwoPi * k2 / n)};
    const SpherePoint dst[3] = {std::polar(1.0, s[0]), std::polar(1.0, s[static_cast<size_t>(k1)]),
                                std::polar(1.0, s[static_cast<size_t>(k2)])};
    try {
        const CircleMap fit = CircleMap::mobius(Mobius::through(src, dst), n);
        if (lift_distance(fit, m) <= 1e-11) return fit;
    } catch (const InputError&) {
        // not circle preserving; keep the sampled map
    }
    return m;
}

double lift_distance(const CircleMap& m1, const CircleMap& m2) {
    const int n = std::max(m1.n(), m2.n());
    const double off = kTwoPi * std::round((m1.lift(0.0) - m2.lift(0.0)) / kTwoPi);
    double sup = 0.0;
    for (int k = 0; k < n; ++k) {
        const double theta = kTwoPi * k / n;
        sup = std::max(sup, std::fabs(m1.lift(theta) - m2.lift(theta) - off));
    }
    return sup;
}

}  // namespace weldlab
