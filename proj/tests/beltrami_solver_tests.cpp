#include <doctest.h>

#include <cmath>

#include "weldlab/beltrami_solver.hpp"

using namespace weldlab;

namespace {

// closed form for mu = c * chi_disk, hydrodynamic: z + c zbar inside,
// z + c / z outside
cpx disk_oracle(cpx z, double c) {
    if (std::abs(z) <= 1.0) return z + c * std::conj(z);
    return z + c / z;
}

// skip the derivative-discontinuity ring |z| = 1 and the far field
bool oracle_region(cpx z) {
    const double r = std::abs(z);
    return (r <= 0.9 || r >= 1.1) && r <= 2.0;
}

double sup_vs_oracle(const PlaneMap& w, double c) {
    const auto& grid = std::get<RectGrid>(w.grid);
    double sup = 0.0;
    for (int j = 0; j < grid.ny; ++j)
        for (int i = 0; i < grid.nx; ++i) {
            const cpx z = grid.node(i, j);
            if (!oracle_region(z)) continue;
            sup = std::max(sup, std::abs(w.values[grid.index(i, j)] - disk_oracle(z, c)));
        }
    return sup;
}

}  // namespace

TEST_CASE("zero coefficient returns the identity") {
    BeltramiField mu;
    mu.grid = RectGrid::square(64, 2.0);
    mu.mu.assign(std::get<RectGrid>(mu.grid).size(), cpx(0.0));
    mu.support_radius = 1.0;

    SolveOptions opts;
    opts.grid_n = 128;
    const auto [w, report] = solve_beltrami(mu, NormalizationTag::hydrodynamic, opts);
    const auto& grid = std::get<RectGrid>(w.grid);
    for (int j = 0; j < grid.ny; j += 7)
        for (int i = 0; i < grid.nx; i += 7)
            CHECK(std::abs(w.values[grid.index(i, j)] - grid.node(i, j)) <= 1e-12);
    CHECK(report.residual <= 1e-12);
}

TEST_CASE("disk indicator solves to the closed form") {
    const BeltramiField mu = disk_indicator_field(cpx(0.3), 512, 1.5);
    SolveOptions opts;
    opts.grid_n = 256;
    const auto [w, report] = solve_beltrami(mu, NormalizationTag::hydrodynamic, opts);
    CHECK(sup_vs_oracle(w, 0.3) <= 1e-2);  // 5e-3 at the 512 acceptance grid
    CHECK(report.iterations <= 50);

    // residual measured away from the rim agrees with the report's scale
    CHECK(residual(w, mu, oracle_region) <= 1e-2);
}

TEST_CASE("residual flags a deliberate mismatch") {
    const BeltramiField mu = disk_indicator_field(cpx(0.3), 256, 1.5);
    PlaneMap id;
    id.domain = DomainTag::sphere;
    id.grid = RectGrid::square(256, 2.0);
    const auto& grid = std::get<RectGrid>(id.grid);
    id.values.resize(grid.size());
    for (int j = 0; j < grid.ny; ++j)
        for (int i = 0; i < grid.nx; ++i) id.values[grid.index(i, j)] = grid.node(i, j);

    const double r = residual(id, mu, oracle_region);
    CHECK(r == doctest::Approx(0.15).epsilon(0.05));  // |0 - mu * 1| / (1 + 1)
}

TEST_CASE("renormalize pins three points") {
    const BeltramiField mu = disk_indicator_field(cpx(0.3), 256, 1.5);
    SolveOptions opts;
    opts.grid_n = 128;
    const auto [w, report] = solve_beltrami(mu, NormalizationTag::hydrodynamic, opts);

    const PlaneMap fixed =
        renormalize(w, {SpherePoint(cpx(0.0)), SpherePoint(cpx(1.0)), SpherePoint::infinity()});
    CHECK(std::abs(fixed(cpx(0.0))) <= 1e-12);
    CHECK(std::abs(fixed(cpx(1.0)) - cpx(1.0)) <= 1e-12);
    CHECK(fixed.at_infinity.is_infinite());
}

TEST_CASE("fix-0-1-inf solutions agree across resolutions") {
    const BeltramiField mu = disk_indicator_field(cpx(0.3), 512, 1.5);
    SolveOptions coarse, fine;
    coarse.grid_n = 128;
    fine.grid_n = 256;
    const auto [wc, rc] = solve_beltrami(mu, NormalizationTag::fix_0_1_inf, coarse);
    const auto [wf, rf] = solve_beltrami(mu, NormalizationTag::fix_0_1_inf, fine);

    const auto& gc = std::get<RectGrid>(wc.grid);
    const auto& gf = std::get<RectGrid>(wf.grid);
    double sup = 0.0;
    for (int j = 0; j < gc.ny; ++j)
        for (int i = 0; i < gc.nx; ++i) {
            if (std::abs(gc.node(i, j)) > 2.0) continue;
            sup = std::max(sup,
                           std::abs(wc.values[gc.index(i, j)] - wf.values[gf.index(2 * i, 2 * j)]));
        }
    CHECK(sup <= 2e-2);  // 5e-3 at the 512/1024 acceptance pair
}

TEST_CASE("contraction: sup changes decay at roughly the coefficient rate") {
    const BeltramiField mu = disk_indicator_field(cpx(0.5), 256, 1.5);
    SolveOptions opts;
    opts.grid_n = 128;
    const auto [w, report] = solve_beltrami(mu, NormalizationTag::hydrodynamic, opts);
    REQUIRE(report.sup_changes.size() >= 3);
    for (size_t k = 1; k + 1 < report.sup_changes.size(); ++k) {
        if (report.sup_changes[k] < 1e-13) break;  // at roundoff, ratios are noise
        CHECK(report.sup_changes[k + 1] <= (mu.sup_norm + 0.05) * report.sup_changes[k] + 1e-14);
    }
}

TEST_CASE("small smooth coefficients move the map at first order") {
    auto smooth_field = [](double t) {
        BeltramiField mu;
        mu.grid = RectGrid::square(128, 2.0);
        const auto& grid = std::get<RectGrid>(mu.grid);
        mu.mu.resize(grid.size());
        for (int j = 0; j < grid.ny; ++j)
            for (int i = 0; i < grid.nx; ++i) {
                const cpx z = grid.node(i, j);
                mu.mu[grid.index(i, j)] = t * std::exp(-4.0 * std::norm(z));
            }
        mu.sup_norm = BeltramiField::computed_sup(mu.mu);
        mu.support_radius = 2.0;
        return mu;
    };
    SolveOptions opts;
    opts.grid_n = 128;
    auto displacement = [&](double t) {
        const auto [w, report] = solve_beltrami(smooth_field(t), NormalizationTag::hydrodynamic, opts);
        const auto& grid = std::get<RectGrid>(w.grid);
        double sup = 0.0;
        for (size_t k = 0; k < w.values.size(); k += 5) {
            const int i = static_cast<int>(k) % grid.nx;
            const int j = static_cast<int>(k) / grid.nx;
            sup = std::max(sup, std::abs(w.values[k] - grid.node(i, j)));
        }
        return sup;
    };
    const double d1 = displacement(0.2);
    const double d2 = displacement(0.1);
    CHECK(d2 == doctest::Approx(d1 / 2.0).epsilon(0.15));  // O(t) scaling
}

TEST_CASE("sup_norm beyond the contract is rejected") {
    BeltramiField mu = disk_indicator_field(cpx(0.95), 128, 1.5);
    SolveOptions opts;
    opts.grid_n = 128;
    CHECK_THROWS_AS((void)solve_beltrami(mu, NormalizationTag::hydrodynamic, opts), InputError);
}
