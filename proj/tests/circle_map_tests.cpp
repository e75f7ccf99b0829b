#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "weldlab/circle_map.hpp"

using namespace weldlab;

namespace {

// generic sampled test map, not close to any closed form
CircleMap wavy(int n = 1024) {
    return CircleMap::sample(
        [](double th) { return th + 0.3 * std::sin(th) + 0.1 * std::sin(2.0 * th); }, n);
}

double sup_from_identity(const CircleMap& m) {
    double sup = 0.0;
    for (int k = 0; k < 4096; ++k) {
        const double th = kTwoPi * k / 4096;
        sup = std::max(sup, std::abs(m.lift(th) - th));
    }
    return sup;
}

}  // namespace

TEST_CASE("identity and rotation lifts are exact") {
    const CircleMap id = CircleMap::identity();
    CHECK(id.lift(0.7) == 0.7);
    CHECK(id.kind() == MapKind::identity);

    const CircleMap rot = CircleMap::rotation(0.5);
    CHECK(rot.lift(1.0) == doctest::Approx(1.5).epsilon(1e-15));
    CHECK(rot.kind() == MapKind::mobius);
}

TEST_CASE("mobius maps stay on the unit circle") {
    const CircleMap m = CircleMap::mobius(Mobius::disk_automorphism(std::polar(1.0, 0.4), cpx(0.3, -0.2)));
    for (int k = 0; k < 64; ++k) {
        const cpx img = m.at_angle(kTwoPi * k / 64);
        CHECK(std::abs(std::abs(img) - 1.0) <= 1e-12);
    }
    // circle-breaking coefficients are rejected
    CHECK_THROWS_AS((void)CircleMap::mobius(cpx(1.0), cpx(0.5), cpx(0.0), cpx(1.0)), InputError);
}

TEST_CASE("lift periodicity and winding at the seams") {
    const CircleMap m = wavy();
    for (double th : {0.0, 1.0, 3.0, 6.0}) {
        CHECK(m.lift(th + kTwoPi) == doctest::Approx(m.lift(th) + kTwoPi).epsilon(1e-12));
    }
    CHECK(m.lift(kTwoPi) - m.lift(0.0) == doctest::Approx(kTwoPi).epsilon(1e-12));
}

TEST_CASE("from_lift_samples rejects bad input") {
    std::vector<double> lift(1024);
    for (int k = 0; k < 1024; ++k) lift[static_cast<size_t>(k)] = kTwoPi * k / 1024;
    std::swap(lift[3], lift[4]);  // kill monotonicity
    CHECK_THROWS_AS((void)CircleMap::from_lift_samples(lift), InputError);

    std::vector<double> not_pow2(1000, 0.0);
    for (int k = 0; k < 1000; ++k) not_pow2[static_cast<size_t>(k)] = kTwoPi * k / 1000;
    CHECK_THROWS_AS((void)CircleMap::from_lift_samples(not_pow2), InputError);
}

TEST_CASE("composition round trip stays within 1e-6 at n = 1024") {
    const CircleMap m = wavy();
    CHECK(sup_from_identity(compose(invert(m), m)) <= 1e-6);
    CHECK(sup_from_identity(compose(m, invert(m))) <= 1e-6);
}

TEST_CASE("compose multiplies closed forms exactly") {
    const CircleMap r1 = CircleMap::rotation(0.3);
    const CircleMap r2 = CircleMap::rotation(0.9);
    const CircleMap both = compose(r1, r2);
    CHECK(both.kind() == MapKind::mobius);
    CHECK(both.lift(0.0) == doctest::Approx(1.2).epsilon(1e-14));
}

TEST_CASE("conjugate_by_inversion is an involution") {
    const CircleMap m = wavy(256);
    const CircleMap back = conjugate_by_inversion(conjugate_by_inversion(m));
    CHECK(lift_distance(m, back) <= 1e-12);
}

TEST_CASE("normalize_three_points pins 1, -1, i and is idempotent") {
    const CircleMap m = wavy();
    const auto [fixed, sigma] = normalize_three_points(m);
    CHECK(std::abs(fixed.at_angle(0.0) - cpx(1.0)) <= 1e-10);
    CHECK(std::abs(fixed.at_angle(kPi) - cpx(-1.0)) <= 1e-10);
    CHECK(std::abs(fixed.at_angle(kPi / 2) - cpx(0.0, 1.0)) <= 1e-10);

    const auto [again, sigma2] = normalize_three_points(fixed);
    CHECK(lift_distance(fixed, again) <= 1e-10);
}

TEST_CASE("classify_exact_kind snaps hidden closed forms") {
    const CircleMap hidden_id = CircleMap::sample([](double th) { return th; }, 256);
    CHECK(hidden_id.kind() == MapKind::sampled);
    CHECK(classify_exact_kind(hidden_id).kind() == MapKind::identity);

    const CircleMap mob = CircleMap::mobius(Mobius::disk_automorphism(1.0, cpx(0.2, 0.1)));
    const CircleMap hidden_mob = CircleMap::sample([&](double th) { return mob.lift(th); }, 256);
    CHECK(classify_exact_kind(hidden_mob).kind() == MapKind::mobius);

    const CircleMap generic = wavy(256);
    CHECK(classify_exact_kind(generic).kind() == MapKind::sampled);
}

TEST_CASE("sampled inverse agrees with the interpolant everywhere") {
    const CircleMap m = wavy(512);
    const CircleMap inv = invert(m);
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> angle(0.0, kTwoPi);
    for (int k = 0; k < 200; ++k) {
        const double th = angle(rng);
        CHECK(std::abs(inv.lift(m.lift(th)) - th) <= 1e-9);
    }
}
