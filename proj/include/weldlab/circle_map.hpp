#pragma once
// Orientation-preserving homeomorphisms of the unit circle, represented by a
// strictly increasing lift L with L(theta + 2*pi) = L(theta) + 2*pi.
//
// Three kinds share one interface:
//   identity  - exact closed form
//   mobius    - disk automorphism lambda (z - p)/(1 - conj(p) z), exact lift
//   sampled   - n lift values on the uniform grid, monotone cubic (or linear)
//               interpolation between nodes
//
// Inverses and compositions evaluate through the underlying closed forms or
// interpolants (no intermediate resampling), so invert() really inverts the
// interpolant and long composition chains cancel to rounding.

#include <memory>
#include <optional>
#include <vector>

#include "weldlab/mobius.hpp"

namespace weldlab {

enum class InterpKind { monotone_cubic, linear };
enum class MapKind { identity, mobius, sampled };

namespace detail {
// Strictly increasing lift functor on the whole line.
class LiftFn {
public:
    virtual ~LiftFn() = default;
    [[nodiscard]] virtual double value(double theta) const = 0;
    [[nodiscard]] virtual double derivative(double theta) const = 0;
};
using LiftPtr = std::shared_ptr<const LiftFn>;
}  // namespace detail

class CircleMap {
public:
    // Closed-form constructors.
    static CircleMap identity(int n = 1024);
    static CircleMap rotation(double alpha, int n = 1024);
    // General coefficients (a z + b)/(c z + d); must preserve the unit circle
    // with positive orientation (checked, then reduced to canonical form).
    static CircleMap mobius(cpx a, cpx b, cpx c, cpx d, int n = 1024);
    static CircleMap mobius(const Mobius& m, int n = 1024);
    // n lift samples at theta_k = 2 pi k / n; strictly increasing, wrapping
    // to lift[0] + 2 pi. n must be a positive power of two.
    static CircleMap from_lift_samples(std::vector<double> lift,
                                       InterpKind interp = InterpKind::monotone_cubic);
    // Sample an arbitrary lift callable at n nodes (keeps only the samples).
    template <class F>
    static CircleMap sample(F&& lift_fn, int n, InterpKind interp = InterpKind::monotone_cubic) {
        std::vector<double> values(static_cast<size_t>(n));
        for (int k = 0; k < n; ++k) values[static_cast<size_t>(k)] = lift_fn(kTwoPi * k / n);
        return from_lift_samples(std::move(values), interp);
    }

    [[nodiscard]] int n() const { return n_; }
    [[nodiscard]] MapKind kind() const { return kind_; }
    [[nodiscard]] InterpKind interp() const { return interp_; }
    [[nodiscard]] const std::vector<double>& lift_samples() const { return samples_; }
    // Canonical möbius data (lambda, p); only for mobius kind.
    [[nodiscard]] cpx mobius_lambda() const;
    [[nodiscard]] cpx mobius_p() const;
    [[nodiscard]] Mobius mobius_matrix() const;

    [[nodiscard]] double lift(double theta) const;
    [[nodiscard]] double lift_derivative(double theta) const;
    [[nodiscard]] cpx at_angle(double theta) const { return std::polar(1.0, lift(theta)); }
    [[nodiscard]] cpx operator()(cpx z_on_circle) const { return at_angle(std::arg(z_on_circle)); }

private:
    CircleMap() = default;
    static CircleMap wrap(detail::LiftPtr fn, MapKind kind, int n, InterpKind interp);

    detail::LiftPtr fn_;
    MapKind kind_ = MapKind::identity;
    InterpKind interp_ = InterpKind::monotone_cubic;
    int n_ = 0;
    std::vector<double> samples_;
    std::optional<std::pair<cpx, cpx>> mobius_;  // (lambda, p)

    friend CircleMap compose(const CircleMap&, const CircleMap&);
    friend CircleMap invert(const CircleMap&);
    friend CircleMap conjugate_by_inversion(const CircleMap&);
    friend CircleMap classify_exact_kind(const CircleMap&);
};

// m1 after m2. Closed forms multiply exactly; otherwise the composition chain
// is kept and evaluated lazily. Result has n = max(n1, n2) samples.
[[nodiscard]] CircleMap compose(const CircleMap& m1, const CircleMap& m2);

// Exact inverse of the represented homeomorphism (root finding against the
// stored interpolant for sampled maps).
[[nodiscard]] CircleMap invert(const CircleMap& m);

// iota o m o iota with iota(z) = 1/z, i.e. lift theta -> -L(-theta).
[[nodiscard]] CircleMap conjugate_by_inversion(const CircleMap& m);

struct NormalizedCircleMap {
    CircleMap map;   // sigma o m
    Mobius sigma;    // the normalizing möbius
};
// Post-compose with the unique möbius sending (m(1), m(-1), m(i)) to
// (1, -1, i); the result fixes the three points.
[[nodiscard]] NormalizedCircleMap normalize_three_points(const CircleMap& m);

// Detect closed-form maps hiding in sampled data: snaps to identity or to a
// fitted möbius when every sample agrees to ~1e-11, else returns m unchanged.
[[nodiscard]] CircleMap classify_exact_kind(const CircleMap& m);

// sup_k |L1(theta_k) - L2(theta_k)| over the finer sample grid, after removing
// the 2*pi branch offset.
[[nodiscard]] double lift_distance(const CircleMap& m1, const CircleMap& m2);

}  // namespace weldlab
