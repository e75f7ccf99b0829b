#pragma once
// Möbius transformations of the Riemann sphere and projective points.
// Everything downstream (circle maps, welding normalization, moduli) goes
// through this header, so the point type carries infinity explicitly instead
// of using float sentinels.

#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>
#include <string>

namespace weldlab {

using cpx = std::complex<double>;

inline constexpr double kPi = 3.141592653589793238462643383279502884;
inline constexpr double kTwoPi = 2.0 * kPi;

// Error taxonomy. InputError maps to CLI exit 2, NumericError to exit 3.
struct InputError : std::runtime_error {
    explicit InputError(const std::string& m) : std::runtime_error(m) {}
};
struct NumericError : std::runtime_error {
    explicit NumericError(const std::string& m) : std::runtime_error(m) {}
};

// Point of the Riemann sphere in homogeneous coordinates (z : w); w == 0 is
// the point at infinity. Kept unnormalized, compared chordally.
struct SpherePoint {
    cpx z{0.0, 0.0};
    cpx w{1.0, 0.0};

    SpherePoint() = default;
    SpherePoint(cpx value) : z(value), w(1.0, 0.0) {}  // NOLINT: implicit on purpose
    SpherePoint(double value) : z(value, 0.0), w(1.0, 0.0) {}
    static SpherePoint infinity() { return SpherePoint(cpx(1.0, 0.0), cpx(0.0, 0.0)); }

    [[nodiscard]] bool is_infinite() const {
        return std::abs(w) <= 1e-300 * std::abs(z);
    }
    [[nodiscard]] cpx value() const {
        if (is_infinite()) throw NumericError("SpherePoint: finite value of infinity requested");
        return z / w;
    }

private:
    SpherePoint(cpx zz, cpx ww) : z(zz), w(ww) {}
    friend struct Mobius;
    friend SpherePoint sphere_point_raw(cpx, cpx);
};

inline SpherePoint sphere_point_raw(cpx z, cpx w) { return SpherePoint(z, w); }

// Chordal metric on the sphere, |p - q| / sqrt((1+|p|^2)(1+|q|^2)) scaled to
// agree with |p - q| for moderate points; bounded, infinity-safe.
inline double chordal_distance(const SpherePoint& a, const SpherePoint& b) {
    const cpx num = a.z * b.w - b.z * a.w;
    const double da = std::sqrt(std::norm(a.z) + std::norm(a.w));
    const double db = std::sqrt(std::norm(b.z) + std::norm(b.w));
    return 2.0 * std::abs(num) / (da * db);
}

// z -> (a z + b) / (c z + d), det != 0.
struct Mobius {
    cpx a{1.0}, b{0.0}, c{0.0}, d{1.0};

    static Mobius identity() { return Mobius{}; }
    static Mobius scaling(cpx s) { return Mobius{s, 0.0, 0.0, 1.0}; }
    static Mobius translation(cpx t) { return Mobius{1.0, t, 0.0, 1.0}; }
    static Mobius rotation(double alpha) { return Mobius{std::polar(1.0, alpha), 0.0, 0.0, 1.0}; }
    // Inversion z -> 1/z. Orientation-reversing on the unit circle.
    static Mobius inversion() { return Mobius{0.0, 1.0, 1.0, 0.0}; }
    // Disk automorphism lambda (z - p) / (1 - conj(p) z), |lambda| = 1, |p| < 1.
    static Mobius disk_automorphism(cpx lambda, cpx p) {
        lambda /= std::abs(lambda);
        return Mobius{lambda, -lambda * p, -std::conj(p), 1.0};
    }

    [[nodiscard]] cpx det() const { return a * d - b * c; }

    [[nodiscard]] SpherePoint apply(const SpherePoint& q) const {
        return sphere_point_raw(a * q.z + b * q.w, c * q.z + d * q.w);
    }
    [[nodiscard]] cpx apply_finite(cpx z) const {
        const SpherePoint r = apply(SpherePoint(z));
        return r.value();
    }
    [[nodiscard]] SpherePoint operator()(const SpherePoint& q) const { return apply(q); }

    [[nodiscard]] Mobius inverse() const {
        return Mobius{d, -b, -c, a};
    }
    // this after other: (this*other)(z) = this(other(z)).
    [[nodiscard]] Mobius compose(const Mobius& other) const {
        return Mobius{a * other.a + b * other.c, a * other.b + b * other.d,
                      c * other.a + d * other.c, c * other.b + d * other.d};
    }

    // Unique Möbius sending (q1, q2, q3) to (0, 1, infinity).
    static Mobius to_zero_one_inf(const SpherePoint& q1, const SpherePoint& q2,
                                  const SpherePoint& q3);
    // Unique Möbius with src[k] -> dst[k], k = 0, 1, 2.
    static Mobius through(const SpherePoint src[3], const SpherePoint dst[3]);
};

inline Mobius Mobius::to_zero_one_inf(const SpherePoint& q1, const SpherePoint& q2,
                                      const SpherePoint& q3) {
    // Cross-ratio matrix written projectively so any reference point may be
    // infinity: M(z:w) = ((z w1 - z1 w)(z2 w3 - z3 w2) : (z w3 - z3 w)(z2 w1 - z1 w2)).
    const cpx z1 = q1.z, w1 = q1.w, z2 = q2.z, w2 = q2.w, z3 = q3.z, w3 = q3.w;
    Mobius m;
    m.a = w1 * (z2 * w3 - z3 * w2);
    m.b = -z1 * (z2 * w3 - z3 * w2);
    m.c = w3 * (z2 * w1 - z1 * w2);
    m.d = -z3 * (z2 * w1 - z1 * w2);
    if (std::abs(m.det()) < 1e-280) throw InputError("Mobius: reference points not distinct");
    return m;
}

inline Mobius Mobius::through(const SpherePoint src[3], const SpherePoint dst[3]) {
    const Mobius s = to_zero_one_inf(src[0], src[1], src[2]);
    const Mobius t = to_zero_one_inf(dst[0], dst[1], dst[2]);
    return t.inverse().compose(s);
}

// Cross-ratio sending (q1, q2, q3) to (0, 1, infinity):
// ((q - q1)(q2 - q3)) / ((q - q3)(q2 - q1)), evaluated projectively.
inline SpherePoint cross_ratio(const SpherePoint& q, const SpherePoint& q1,
                               const SpherePoint& q2, const SpherePoint& q3) {
    const cpx num = (q.z * q1.w - q1.z * q.w) * (q2.z * q3.w - q3.z * q2.w);
    const cpx den = (q.z * q3.w - q3.z * q.w) * (q2.z * q1.w - q1.z * q2.w);
    if (std::abs(num) < 1e-280 && std::abs(den) < 1e-280)
        throw InputError("cross_ratio: reference points coincide");
    return sphere_point_raw(num, den);
}

}  // namespace weldlab
