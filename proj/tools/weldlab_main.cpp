// Command-line surface: qs / weld / sew / holo subcommands plus rerun, each
// emitting deterministic JSON (and CSV/SVG where the format calls for it) and
// an optional run manifest for byte-exact reproduction.
//
// Exit codes: 0 success, 1 certified failure (a check ran and failed),
// 2 input error, 3 numerical failure.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "weldlab/io.hpp"
#include "weldlab/qs.hpp"
#include "weldlab/sewing.hpp"
#include "weldlab/welding.hpp"

namespace {

using namespace weldlab;
namespace fs = std::filesystem;

struct RunRecorder {
    io::RunManifest manifest;
    std::optional<fs::path> manifest_path;
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

    void input(const fs::path& p) { manifest.inputs[p.string()] = io::digest_file(p); }
    void param(const std::string& key, const std::string& value) {
        manifest.parameters[key] = value;
    }
    // Writes the document and records its digest.
    void output(const fs::path& p, const std::string& text) {
        io::write_text_file(p, text);
        manifest.outputs[p.string()] = io::digest_bytes(text);
    }
    void finish() {
        if (!manifest_path) return;
        manifest.tool_version = io::kToolVersion;
        manifest.wall_time_s =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        io::save_manifest(*manifest_path, manifest);
    }
};

// Emit to --out when given, otherwise to stdout.
void deliver(RunRecorder& rec, const std::optional<fs::path>& out, const std::string& text) {
    if (out)
        rec.output(*out, text);
    else
        std::fputs(text.c_str(), stdout);
}

fs::path csv_twin(const fs::path& json_path) {
    fs::path p = json_path;
    p.replace_extension(".csv");
    return p;
}

int dispatch(const std::vector<std::string>& args);

int cmd_rerun(const fs::path& manifest_path) {
    const io::RunManifest m = io::load_manifest(manifest_path);
    for (const auto& [path, digest] : m.inputs)
        if (io::digest_file(path) != digest)
            throw InputError("rerun: input " + path + " changed since the manifest was written");
    const int code = dispatch(m.argv);
    if (code != 0) return code;
    for (const auto& [path, digest] : m.outputs)
        if (io::digest_file(path) != digest) {
            std::fprintf(stderr, "rerun: output %s does not match its manifest digest\n",
                         path.c_str());
            return 1;
        }
    return 0;
}

int dispatch(const std::vector<std::string>& args) {
    CLI::App app{"conformal welding laboratory"};
    app.set_version_flag("--version", io::kToolVersion);
    app.require_subcommand(1);

    std::string map_file, left_file, right_file, family_file;
    int left_index = 0, right_index = 0;
    int depth = 8, n = 1024, solver_grid = 0;
    double tol = -1.0, delta = 1e-3, t_grid = 0.1;
    std::string out_path, svg_path, manifest_path;

    auto add_io = [&](CLI::App* cmd) {
        cmd->add_option("--out", out_path, "output document path (stdout when absent)");
        cmd->add_option("--manifest", manifest_path, "write a run manifest here");
    };

    CLI::App* qs = app.add_subcommand("qs", "quasisymmetry constant of a circle map");
    qs->add_option("map", map_file, "CircleMap CSV")->required();
    qs->add_option("--depth", depth, "dyadic sweep depth")->default_val(8);
    add_io(qs);

    CLI::App* weld_cmd = app.add_subcommand("weld", "conformal welding of a circle map");
    weld_cmd->add_option("map", map_file, "CircleMap CSV")->required();
    weld_cmd->add_option("--n", n, "boundary samples")->default_val(1024);
    weld_cmd->add_option("--tol", tol, "residual acceptance")->default_val(1e-2);
    weld_cmd->add_option("--grid", solver_grid, "solver grid resolution");
    weld_cmd->add_option("--svg", svg_path, "write the welded boundary curve here");
    add_io(weld_cmd);

    CLI::App* sew_cmd = app.add_subcommand("sew", "sew two rigged spheres along boundaries");
    sew_cmd->add_option("left", left_file, "left RiggedSphere JSON")->required();
    sew_cmd->add_option("i", left_index, "left boundary index")->required();
    sew_cmd->add_option("right", right_file, "right RiggedSphere JSON")->required();
    sew_cmd->add_option("j", right_index, "right boundary index")->required();
    sew_cmd->add_option("--n", n, "seam samples")->default_val(1024);
    sew_cmd->add_option("--tol", tol, "seam residual acceptance")->default_val(1e-4);
    sew_cmd->add_option("--grid", solver_grid, "solver grid resolution");
    sew_cmd->add_option("--svg", svg_path, "write the seam image curve here");
    add_io(sew_cmd);

    CLI::App* holo = app.add_subcommand("holo", "holomorphy certificate for a family");
    holo->add_option("family", family_file, "family spec JSON")->required();
    holo->add_option("--grid", t_grid, "half-width of the 3x3 t grid")->default_val(0.1);
    holo->add_option("--delta", delta, "Wirtinger step")->default_val(1e-3);
    add_io(holo);

    CLI::App* rerun = app.add_subcommand("rerun", "reproduce a run from its manifest");
    rerun->add_option("--manifest", manifest_path, "manifest to replay")->required();

    std::vector<const char*> argv;
    argv.reserve(args.size() + 1);
    argv.push_back("weldlab");
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    if (rerun->parsed()) return cmd_rerun(manifest_path);

    RunRecorder rec;
    // argv for the manifest: everything but the --manifest pair, so a replay
    // regenerates the outputs without touching the manifest itself
    for (size_t k = 0; k < args.size(); ++k) {
        if (args[k] == "--manifest") {
            ++k;
            continue;
        }
        rec.manifest.argv.push_back(args[k]);
    }
    if (!manifest_path.empty()) rec.manifest_path = manifest_path;
    const std::optional<fs::path> out =
        out_path.empty() ? std::nullopt : std::optional<fs::path>(out_path);

    int code = 0;
    if (qs->parsed()) {
        rec.input(map_file);
        rec.param("depth", std::to_string(depth));
        const QsEstimate est = qs_constant(io::load_circle_map(map_file), depth);
        deliver(rec, out, io::qs_json(est));
        if (!std::isfinite(est.k)) code = 1;
    } else if (weld_cmd->parsed()) {
        rec.input(map_file);
        rec.param("n", std::to_string(n));
        rec.param("tol", io::format_double(tol));
        WeldOptions wopts;
        wopts.n = n;
        wopts.tol = tol;
        if (solver_grid > 0) {
            wopts.solver.grid_n = solver_grid;
            rec.param("grid", std::to_string(solver_grid));
        }
        const WeldingPair pair = weld(io::load_circle_map(map_file), wopts);
        deliver(rec, out, io::welding_json(pair));
        if (!svg_path.empty()) rec.output(svg_path, io::curve_svg(pair.omega_boundary));
    } else if (sew_cmd->parsed()) {
        rec.input(left_file);
        rec.input(right_file);
        rec.param("n", std::to_string(n));
        rec.param("tol", io::format_double(tol));
        SewOptions opts;
        opts.n = n;
        opts.seam_tol = tol;
        if (solver_grid > 0) {
            opts.weld.solver.grid_n = solver_grid;
            rec.param("grid", std::to_string(solver_grid));
        }
        const RiggedSphere s1 = io::load_rigged_sphere(left_file);
        const RiggedSphere s2 = io::load_rigged_sphere(right_file);
        const SewnSurface sewn = sew(s1, left_index, s2, right_index, opts);
        const std::map<std::string, std::string> digests = {
            {"left", io::digest_file(left_file)}, {"right", io::digest_file(right_file)}};
        deliver(rec, out, io::sewn_json(sewn, digests));
        if (!svg_path.empty()) rec.output(svg_path, io::curve_svg(sewn.welding.omega_boundary));
    } else if (holo->parsed()) {
        rec.input(family_file);
        rec.param("grid", io::format_double(t_grid));
        rec.param("delta", io::format_double(delta));
        const io::FamilyFile family = io::load_family_file(family_file);
        const CRReport report = holomorphy_report(family.spec, square_grid3(t_grid), delta);
        deliver(rec, out, io::cr_summary_json(report, family.threshold));
        if (out) rec.output(csv_twin(*out), io::cr_report_csv(report));
        if (report.ratio > family.threshold) code = 1;
    }
    rec.finish();
    return code;
}

}  // namespace

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    try {
        return dispatch(args);
    } catch (const weldlab::InputError& e) {
        std::fprintf(stderr, "input error: %s\n", e.what());
        return 2;
    } catch (const weldlab::NumericError& e) {
        std::fprintf(stderr, "numerical failure: %s\n", e.what());
        return 3;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    }
}
