// Acceptance gate: nine numbered end-to-end checks, one PASS/FAIL line each,
// every tolerance pinned in this file. Exit code is the failure count.

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <random>
#include <string>
#include <sys/wait.h>
#include <variant>
#include <vector>

#include "weldlab/ba_extension.hpp"
#include "weldlab/beltrami_solver.hpp"
#include "weldlab/holomorphy.hpp"
#include "weldlab/io.hpp"
#include "weldlab/qs.hpp"
#include "weldlab/sewing.hpp"
#include "weldlab/welding.hpp"

using namespace weldlab;
namespace fs = std::filesystem;

namespace {

int failures = 0;

std::string sci(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3g", v);
    return buf;
}

struct Outcome {
    bool ok = false;
    std::string detail;
};

Outcome bounded(double value, double bound) {
    return {value <= bound, sci(value) + " <= " + sci(bound)};
}

Outcome join(std::initializer_list<Outcome> parts) {
    Outcome out{true, ""};
    for (const Outcome& p : parts) {
        out.ok = out.ok && p.ok;
        if (!out.detail.empty()) out.detail += ", ";
        out.detail += p.detail;
    }
    return out;
}

template <class F>
void criterion(int n, const char* desc, F&& body) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
        o = body();
    } catch (const std::exception& e) {
        o = {false, std::string("threw: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("criterion %d %s: %s (%s) [%.1fs]\n", n, o.ok ? "PASS" : "FAIL", desc,
                o.detail.c_str(), secs);
    std::fflush(stdout);
    if (!o.ok) ++failures;
}

cpx disk_oracle(cpx z, double c) {
    return std::abs(z) <= 1.0 ? z + c * std::conj(z) : z + c / z;
}

RiggedSphere piece(cpx finite_marked, const CircleMap& rigging = CircleMap::identity()) {
    RiggedSphere s;
    s.model = SphereModel::border;
    s.marked = {SpherePoint(finite_marked), SpherePoint::infinity()};
    s.boundaries.push_back(BoundaryCircle{cpx(0.0), 1.0, rigging});
    return s;
}

std::string q(const fs::path& p) { return "'" + p.string() + "'"; }

int run_cli(const std::string& args) {
    const std::string cmd = std::string(WELDLAB_BIN) + " " + args + " >/dev/null 2>&1";
    const int rc = std::system(cmd.c_str());
    return rc == -1 ? -1 : WEXITSTATUS(rc);
}

// 1: solve the 0.3 disk indicator at 512^2 and compare with the exact map
// away from the rim, where the finite-difference picture is clean.
Outcome crit_solver_closed_form() {
    const BeltramiField mu = disk_indicator_field(cpx(0.3), 512, 1.5);
    const auto [f, rep] = solve_beltrami(mu);
    const auto& g = std::get<RectGrid>(f.grid);
    double worst = 0.0;
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            const cpx z = g.node(i, j);
            const double r = std::abs(z);
            if (r > 0.9 && r < 1.1) continue;
            if (r > 2.0) continue;
            worst = std::max(worst, std::abs(f.values[g.index(i, j)] - disk_oracle(z, 0.3)));
        }
    return bounded(worst, 5e-3);
}

// 2: the same coefficient solved at 512 and 1024 nodes per side, pinned at
// 0, 1, infinity, must agree on the shared nodes inside |z| <= 2.
Outcome crit_resolution_stability() {
    const BeltramiField mu = disk_indicator_field(cpx(0.3), 512, 1.5);
    SolveOptions coarse, fine;
    coarse.grid_n = 512;
    fine.grid_n = 1024;
    const auto [fc, rc] = solve_beltrami(mu, NormalizationTag::fix_0_1_inf, coarse);
    const auto [ff, rf] = solve_beltrami(mu, NormalizationTag::fix_0_1_inf, fine);
    const auto& gc = std::get<RectGrid>(fc.grid);
    const auto& gf = std::get<RectGrid>(ff.grid);
    double worst = 0.0;
    for (int j = 0; j < gc.ny; ++j)
        for (int i = 0; i < gc.nx; ++i) {
            if (std::abs(gc.node(i, j)) > 2.0) continue;
            worst = std::max(worst,
                             std::abs(fc.values[gc.index(i, j)] - ff.values[gf.index(2 * i, 2 * j)]));
        }
    return bounded(worst, 5e-3);
}

// 3: the triangle-kernel extension of the identity line map has coefficient
// exactly 1/3 everywhere on the half-plane grid.
Outcome crit_extension_identity() {
    const RectGrid grid{33, 17, -2.0, 0.1, 0.125, 0.1};
    const PlaneMap f = ba_extend([](double x) { return x; }, grid);
    const BeltramiField mu = beltrami_of_map(f);
    double worst = 0.0;
    for (const cpx m : mu.mu) worst = std::max(worst, std::abs(m - cpx(1.0 / 3.0)));
    return bounded(worst, 1e-8);
}

// 4: welding. The identity factors exactly; a synthesized quadratic-boundary
// map must round-trip through the full pipeline at the default resolution.
Outcome crit_welding_round_trip() {
    const double id_residual = weld(CircleMap::identity()).residual;

    const auto [h, oracle] = synthesize_h([](cpx z) { return z + 0.2 * z * z; });
    const WeldingPair pair = weld(h);
    const int n = static_cast<int>(oracle.omega_boundary.size());
    double gap = 0.0;
    for (int k = 0; k < n; ++k) {
        gap = std::max(gap, std::abs(pair.omega_boundary[static_cast<size_t>(k)] -
                                     oracle.omega_boundary[static_cast<size_t>(k)]));
        const cpx zk = std::polar(1.0, kTwoPi * k / n);
        gap = std::max(gap, std::abs(pair.g(zk) - oracle.g(zk)));
    }
    return join({bounded(id_residual, 1e-10), bounded(gap, 1e-2)});
}

// 5: quasisymmetry constants. Exactly 1 for the identity; the piecewise
// scaling x -> 2x (x >= 0) pulled back to the circle lands within 5% of 2.
Outcome crit_qs_constants() {
    const QsEstimate id = qs_constant(CircleMap::identity(), 6);
    const Outcome id_part{id.k == 1.0, "identity k = " + sci(id.k)};
    const CircleMap two =
        circle_from_line_map([](double x) { return x >= 0.0 ? 2.0 * x : x; }, 2048);
    const QsEstimate est = qs_constant(two, 8);
    return join({id_part, bounded(std::abs(est.k - 2.0), 0.1)});
}

// 6: sewing closed forms. Identity riggings give modulus 6 on the nose;
// a sampled gauge replacement cancels to the same sphere; 100 random möbius
// moves of one piece leave the modulus fixed.
Outcome crit_sewing_moduli() {
    const SewnSurface plain = sew(piece(cpx(2.0)), 0, piece(cpx(3.0)), 0);
    const Outcome closed = bounded(std::abs(moduli_of_sewn(plain)[0] - cpx(6.0)), 1e-8);

    const CircleMap alpha =
        CircleMap::sample([](double th) { return th + 0.2 * std::sin(th); }, 512);
    const SewnSurface gauged =
        sew(piece(cpx(2.0), alpha), 0, piece(cpx(3.0), conjugate_by_inversion(alpha)), 0);
    double gauge_gap = 0.0;
    for (size_t k = 0; k < plain.result.marked.size(); ++k)
        gauge_gap =
            std::max(gauge_gap, chordal_distance(plain.result.marked[k], gauged.result.marked[k]));
    const Outcome gauge = bounded(gauge_gap, 1e-10);

    std::mt19937_64 rng(911);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    int applied = 0;
    double worst = 0.0;
    for (int trial = 0; trial < 140 && applied < 100; ++trial) {
        Mobius sigma = Mobius::scaling(std::polar(1.0 + 0.2 * u(rng), 0.4 * u(rng)))
                           .compose(Mobius::translation(cpx(0.3 * u(rng), 0.3 * u(rng))));
        if (trial % 3 == 0) {
            const cpx pole(6.0 + u(rng), 5.0 * u(rng));
            sigma = Mobius{cpx(0.0), cpx(1.0), cpx(1.0), -pole}.compose(sigma);
        }
        RiggedSphere moved;
        try {
            moved = apply_mobius(piece(cpx(2.0)), sigma);
        } catch (const InputError&) {
            continue;
        }
        ++applied;
        const ModuliVector m = moduli_of_sewn(sew(moved, 0, piece(cpx(3.0)), 0));
        worst = std::max(worst, std::abs(m[0] - cpx(6.0)));
    }
    const Outcome sweep =
        applied == 100 ? bounded(worst, 1e-6) : Outcome{false, "only " + sci(applied) + " moves"};
    return join({closed, gauge, sweep});
}

// 7: holomorphy certificates on the 3x3 grid of half-width 0.1 at step 1e-3:
// the marked-point family certifies at 1e-6, the rigging-path family at
// 1e-2, and the conjugate family is rejected with ratio near 1.
Outcome crit_holomorphy_families() {
    const auto grid = square_grid3(0.1);
    const CRReport marked = holomorphy_report(marked_point_family(), grid, 1e-3);
    const CRReport rig = holomorphy_report(rigging_path_family(), grid, 1e-3);
    const CRReport conj = holomorphy_report(synthetic_family(SyntheticForm::conjugate), grid, 1e-3);
    const Outcome anti{conj.ratio >= 0.99, "conjugate ratio " + sci(conj.ratio) + " >= 0.99"};
    return join({bounded(marked.ratio, 1e-6), bounded(rig.ratio, 1e-2), anti});
}

// 8: the coefficient-path family (solver pipeline differentiated in t).
Outcome crit_beltrami_family() {
    const CRReport rep = holomorphy_report(beltrami_path_family(), square_grid3(0.1), 1e-3);
    return bounded(rep.ratio, 1e-2);
}

// 9: the CLI: identical invocations give byte-identical documents, and a
// recorded manifest replays to the same digests.
Outcome crit_cli_determinism() {
    const fs::path dir = fs::temp_directory_path() / "weldlab_acceptance";
    fs::create_directories(dir);
    io::save_circle_map(dir / "id.csv", CircleMap::identity(256));
    io::save_rigged_sphere(dir / "left.json", piece(cpx(2.0)));
    io::save_rigged_sphere(dir / "right.json", piece(cpx(3.0)));

    if (run_cli("qs " + q(dir / "id.csv") + " --out " + q(dir / "qs1.json") + " --manifest " +
                q(dir / "m.json")) != 0)
        return {false, "qs run failed"};
    if (run_cli("qs " + q(dir / "id.csv") + " --out " + q(dir / "qs2.json")) != 0)
        return {false, "qs rerun failed"};
    const bool qs_same =
        io::read_text_file(dir / "qs1.json") == io::read_text_file(dir / "qs2.json");

    const std::string sew_args =
        q(dir / "left.json") + " 0 " + q(dir / "right.json") + " 0 --out ";
    if (run_cli("sew " + sew_args + q(dir / "sewn1.json")) != 0) return {false, "sew run failed"};
    if (run_cli("sew " + sew_args + q(dir / "sewn2.json")) != 0) return {false, "sew rerun failed"};
    const bool sew_same =
        io::read_text_file(dir / "sewn1.json") == io::read_text_file(dir / "sewn2.json");

    const int replay = run_cli("rerun --manifest " + q(dir / "m.json"));
    Outcome out;
    out.ok = qs_same && sew_same && replay == 0;
    out.detail = std::string("qs bytes ") + (qs_same ? "equal" : "DIFFER") + ", sew bytes " +
                 (sew_same ? "equal" : "DIFFER") + ", replay exit " + std::to_string(replay);
    return out;
}

}  // namespace

int main() {
    criterion(1, "disk-coefficient solve matches its closed form off the rim",
              crit_solver_closed_form);
    criterion(2, "solve is resolution-stable from 512 to 1024 nodes per side",
              crit_resolution_stability);
    criterion(3, "extension of the identity line map has constant coefficient 1/3",
              crit_extension_identity);
    criterion(4, "identity weld is exact and a quadratic boundary round-trips",
              crit_welding_round_trip);
    criterion(5, "quasisymmetry constant is exact on the identity and 5%-tight on x -> 2x",
              crit_qs_constants);
    criterion(6, "sewn moduli: closed form, gauge cancellation, 100 möbius moves",
              crit_sewing_moduli);
    criterion(7, "holomorphy grid certifies marked-point and rigging families, rejects conjugate",
              crit_holomorphy_families);
    criterion(8, "holomorphy grid certifies the coefficient-path family", crit_beltrami_family);
    criterion(9, "CLI documents are byte-deterministic and manifests replay",
              crit_cli_determinism);

    if (failures == 0)
        std::printf("all 9 criteria passed\n");
    else
        std::printf("%d criterion(s) failed\n", failures);
    return failures;
}
