#pragma once
// Sampled maps and Beltrami coefficients on rectangular or polar grids.

#include <functional>
#include <variant>
#include <vector>

#include "weldlab/mobius.hpp"

namespace weldlab {

enum class DomainTag { upper_half_plane, disk, exterior_disk, sphere };
enum class NormalizationTag { fix_0_1_inf, hydrodynamic, none };

// Uniform nodes x0 + i dx, y0 + j dy; row-major with x fastest.
struct RectGrid {
    int nx = 0, ny = 0;
    double x0 = 0.0, y0 = 0.0, dx = 0.0, dy = 0.0;

    [[nodiscard]] size_t size() const { return static_cast<size_t>(nx) * static_cast<size_t>(ny); }
    [[nodiscard]] size_t index(int i, int j) const {
        return static_cast<size_t>(j) * static_cast<size_t>(nx) + static_cast<size_t>(i);
    }
    [[nodiscard]] cpx node(int i, int j) const { return {x0 + i * dx, y0 + j * dy}; }
    // Square periodization grid on [-L, L)^2 with N nodes per side; the N and
    // 2N versions share every other node.
    static RectGrid square(int n, double half_side) {
        const double step = 2.0 * half_side / n;
        return {n, n, -half_side, -half_side, step, step};
    }
};

// nr radii on [r0, r1] (inclusive) by ntheta uniform angles; row-major with
// the angle fastest.
struct PolarGrid {
    int nr = 0, ntheta = 0;
    double r0 = 1.0, r1 = 4.0;

    [[nodiscard]] double dr() const { return (r1 - r0) / (nr - 1); }
    [[nodiscard]] double radius(int i) const { return r0 + i * dr(); }
    [[nodiscard]] double angle(int j) const { return kTwoPi * j / ntheta; }
    [[nodiscard]] size_t size() const {
        return static_cast<size_t>(nr) * static_cast<size_t>(ntheta);
    }
    [[nodiscard]] size_t index(int i, int j) const {
        return static_cast<size_t>(i) * static_cast<size_t>(ntheta) + static_cast<size_t>(j);
    }
    [[nodiscard]] cpx node(int i, int j) const { return std::polar(radius(i), angle(j)); }
};

using GridSpec = std::variant<RectGrid, PolarGrid>;

struct PlaneMap {
    DomainTag domain = DomainTag::sphere;
    GridSpec grid;
    std::vector<cpx> values;  // grid samples, row-major per the grid type
    NormalizationTag normalization = NormalizationTag::none;
    // When present, evaluates the represented map anywhere in its domain
    // (closed forms or boundary-integral continuations); grid-only maps fall
    // back to bilinear interpolation of the samples.
    std::function<cpx(cpx)> evaluator;
    // Image of z = infinity for sphere-domain maps, tracked through
    // renormalizations. Hydrodynamically normalized solutions fix infinity.
    SpherePoint at_infinity = SpherePoint::infinity();

    [[nodiscard]] cpx operator()(cpx z) const;
};

struct BeltramiField {
    GridSpec grid;
    std::vector<cpx> mu;
    double sup_norm = 0.0;
    double support_radius = 0.0;  // mu == 0 outside |z| <= support_radius

    // Bilinear sample; identically 0 outside the carrier grid.
    [[nodiscard]] cpx at(cpx z) const;
    [[nodiscard]] static double computed_sup(const std::vector<cpx>& samples);
};

// Antialiased sampling of coeff * (indicator of |z| <= 1) on the square grid
// [-L, L)^2 with n nodes per side: cells crossing the rim get 4x4-subsample
// coverage averages instead of point values.
[[nodiscard]] BeltramiField disk_indicator_field(cpx coeff, int n, double half_side);

}  // namespace weldlab
