#include <doctest.h>

#include <cmath>

#include "weldlab/ba_extension.hpp"

using namespace weldlab;

namespace {

// grid strictly inside the upper half plane (beltrami_of_map differentiates
// right up to the edges, so keep y > 0)
RectGrid upper_grid() { return RectGrid{33, 17, -2.0, 0.1, 0.125, 0.1}; }

}  // namespace

TEST_CASE("extension of the identity line is x + iy/2 with mu = 1/3") {
    const auto id = [](double x) { return x; };
    for (const cpx z : {cpx(0.3, 0.4), cpx(-1.2, 0.05), cpx(2.0, 1.5)}) {
        const cpx f = ba_extend_point(id, z);
        CHECK(std::abs(f - cpx(z.real(), 0.5 * z.imag())) <= 1e-10);
    }

    const PlaneMap f = ba_extend(id, upper_grid());
    const BeltramiField mu = beltrami_of_map(f);
    for (const cpx v : mu.mu) CHECK(std::abs(v - cpx(1.0 / 3.0, 0.0)) <= 1e-8);
}

TEST_CASE("affine boundary values extend affinely") {
    // h(x) = 2x + 1: the averages scale and shift along with h
    const auto h = [](double x) { return 2.0 * x + 1.0; };
    const cpx z(0.7, 0.9);
    const cpx f = ba_extend_point(h, z);
    CHECK(std::abs(f - (2.0 * cpx(z.real(), 0.5 * z.imag()) + 1.0)) <= 1e-10);
}

TEST_CASE("extension restricts to the boundary values on y = 0") {
    const auto h = [](double x) { return x + 0.3 * std::tanh(x); };
    for (double x : {-1.5, -0.2, 0.0, 0.8, 2.4})
        CHECK(std::abs(ba_extend_point(h, cpx(x, 0.0)) - cpx(h(x), 0.0)) <= 1e-10);
}

TEST_CASE("extension of an increasing smooth map is orientation preserving") {
    const auto h = [](double x) { return x + 0.4 * std::sin(x); };
    const PlaneMap f = ba_extend(h, upper_grid());
    CHECK(min_interior_jacobian(f) > 0.0);
    const BeltramiField mu = beltrami_of_map(f);
    CHECK(mu.sup_norm < 1.0);
}

TEST_CASE("disk_extend short-circuits closed forms") {
    const PlaneMap id = disk_extend(CircleMap::identity());
    CHECK(std::abs(id(cpx(1.7, 0.3)) - cpx(1.7, 0.3)) <= 1e-14);
    CHECK(id.at_infinity.is_infinite());

    const PlaneMap rot = disk_extend(CircleMap::rotation(0.7));
    const cpx z(2.0, -1.0);
    CHECK(std::abs(rot(z) - std::polar(1.0, 0.7) * z) <= 1e-14);
}

TEST_CASE("disk_extend matches the boundary map and flattens to the identity far out") {
    const CircleMap h =
        CircleMap::sample([](double th) { return th + 0.2 * std::sin(th); }, 256);
    DiskExtendOptions opts;
    opts.nr = 96;
    opts.ntheta = 256;
    const PlaneMap f = disk_extend(h, opts);

    for (int k = 0; k < 32; ++k) {
        const double th = kTwoPi * k / 32;
        CHECK(std::abs(f(std::polar(1.0, th)) - h.at_angle(th)) <= 1e-6);
    }
    for (const cpx z : {cpx(4.5, 0.0), cpx(0.0, 5.0), cpx(-6.0, 2.0)})
        CHECK(std::abs(f(z) - z) <= 1e-12);

    const BeltramiField mu = beltrami_of_map(f);
    CHECK(mu.sup_norm < 1.0);
    CHECK(mu.support_radius <= 4.0 + 1e-9);
}
