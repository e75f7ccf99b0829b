#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <sstream>
#include <string>

#include "weldlab/io.hpp"
#include "weldlab/qs.hpp"

using namespace weldlab;
namespace fs = std::filesystem;

namespace {

CircleMap wavy(int n = 128) {
    return CircleMap::sample(
        [](double th) { return th + 0.3 * std::sin(th) + 0.1 * std::sin(2.0 * th); }, n);
}

fs::path scratch_dir() {
    const fs::path dir = fs::temp_directory_path() / "weldlab_io_tests";
    fs::create_directories(dir);
    return dir;
}

// replace the value of a top-level "key": <number> line
std::string patch_json_number(std::string text, const std::string& key, const std::string& value) {
    const size_t at = text.find('"' + key + '"');
    REQUIRE(at != std::string::npos);
    const size_t colon = text.find(':', at);
    const size_t end = text.find_first_of(",\n", colon);
    text.replace(colon + 1, end - colon - 1, " " + value);
    return text;
}

}  // namespace

TEST_CASE("format_double emits shortest round-trip decimals") {
    for (const double x : {0.1, 1.0 / 3.0, -2.5e-17, 6.0, 0.0, 1e300, kTwoPi}) {
        const std::string s = io::format_double(x);
        CHECK(std::strtod(s.c_str(), nullptr) == x);
    }
    CHECK(io::format_double(0.5) == "0.5");
    CHECK(io::format_double(6.0) == "6");
}

TEST_CASE("fnv1a64 digest test vectors") {
    CHECK(io::digest_bytes("") == "fnv1a64:cbf29ce484222325");
    CHECK(io::digest_bytes("a") == "fnv1a64:af63dc4c8601ec8c");

    const fs::path p = scratch_dir() / "digest.txt";
    io::write_text_file(p, "a");
    CHECK(io::digest_file(p) == io::digest_bytes("a"));
}

TEST_CASE("circle map csv round trip") {
    const CircleMap m = wavy();
    const std::string text = io::circle_map_csv(m);
    std::istringstream in(text);
    const CircleMap back = io::parse_circle_map_csv(in);
    REQUIRE(back.kind() == MapKind::sampled);
    REQUIRE(back.n() == m.n());
    for (int k = 0; k < m.n(); ++k)
        CHECK(back.lift_samples()[static_cast<size_t>(k)] ==
              m.lift_samples()[static_cast<size_t>(k)]);
    CHECK(io::circle_map_csv(back) == text);
}

TEST_CASE("closed forms are recovered from their tables") {
    const fs::path dir = scratch_dir();
    io::save_circle_map(dir / "id.csv", CircleMap::identity(64));
    CHECK(io::load_circle_map(dir / "id.csv").kind() == MapKind::identity);

    const CircleMap rot = CircleMap::rotation(0.8, 64);
    io::save_circle_map(dir / "rot.csv", rot);
    const CircleMap back = io::load_circle_map(dir / "rot.csv");
    CHECK(back.kind() == MapKind::mobius);
    CHECK(lift_distance(back, rot) <= 1e-10);
}

TEST_CASE("non-uniform theta columns are resampled") {
    std::string text = "n=8,interp=linear\n";
    const double theta[8] = {0.0, 0.7, 1.5, 2.3, 3.1, 3.9, 4.7, 5.5};
    for (const double t : theta)
        text += io::format_double(t) + "," + io::format_double(t) + "\n";
    std::istringstream in(text);
    // the polyline through (t, t) is the identity lift, so the snap fires
    CHECK(io::parse_circle_map_csv(in).kind() == MapKind::identity);
}

TEST_CASE("malformed circle map files are rejected") {
    const auto parse = [](const std::string& text) {
        std::istringstream in(text);
        return io::parse_circle_map_csv(in);
    };
    CHECK_THROWS_AS((void)parse(""), InputError);
    CHECK_THROWS_AS((void)parse("m=4\n0,0\n"), InputError);
    CHECK_THROWS_AS((void)parse("n=4,interp=linear\n0,0\n1,1\n"), InputError);  // short
    CHECK_THROWS_AS((void)parse("n=4,interp=linear\n0,0\n2,2\n1,1\n3,3\n"), InputError);
    CHECK_THROWS_AS((void)parse("n=4,interp=linear\n0,0\n1,nope\n2,2\n3,3\n"), InputError);
    // lift must increase
    CHECK_THROWS_AS((void)parse("n=4,interp=linear\n0,0\n1.5,2\n3,1\n4.5,3\n"), InputError);
    // n must be a power of two
    std::string text = "n=12,interp=linear\n";
    for (int k = 0; k < 12; ++k) {
        const double t = kTwoPi * k / 12;
        text += io::format_double(t) + "," + io::format_double(t) + "\n";
    }
    CHECK_THROWS_AS((void)parse(text), InputError);
}

TEST_CASE("beltrami field json round trip") {
    const BeltramiField f = disk_indicator_field(cpx(0.3, 0.1), 32, 1.5);
    const std::string text = io::beltrami_json(f);
    const BeltramiField back = io::parse_beltrami_json(text);
    REQUIRE(back.mu.size() == f.mu.size());
    for (size_t k = 0; k < f.mu.size(); ++k) CHECK(back.mu[k] == f.mu[k]);
    CHECK(back.sup_norm == f.sup_norm);
    CHECK(back.support_radius == f.support_radius);
    CHECK(io::beltrami_json(back) == text);

    CHECK_THROWS_AS((void)io::parse_beltrami_json("{nope"), InputError);
    const std::string tampered = patch_json_number(text, "sup_norm", "0.9");
    CHECK_THROWS_AS((void)io::parse_beltrami_json(tampered), InputError);
}

TEST_CASE("rigged sphere json round trip") {
    RiggedSphere s;
    s.model = SphereModel::border;
    s.marked = {SpherePoint(cpx(0.0, 5.0)), SpherePoint::infinity(), SpherePoint(cpx(7.0))};
    s.boundaries.push_back(BoundaryCircle{
        cpx(-2.0), 1.0,
        CircleMap::mobius(Mobius::disk_automorphism(std::polar(1.0, 0.3), cpx(0.1, 0.2)))});
    s.boundaries.push_back(BoundaryCircle{cpx(2.0), 1.0, wavy()});
    s.io_labels = {"left", "right"};

    const std::string text = io::rigged_sphere_json(s);
    const RiggedSphere back = io::parse_rigged_sphere_json(text, ".");
    REQUIRE(back.marked.size() == 3);
    CHECK(chordal_distance(back.marked[0], s.marked[0]) <= 1e-15);
    CHECK(back.marked[1].is_infinite());
    REQUIRE(back.boundaries.size() == 2);
    CHECK(back.boundaries[0].rigging.kind() == MapKind::mobius);
    CHECK(lift_distance(back.boundaries[0].rigging, s.boundaries[0].rigging) <= 1e-12);
    CHECK(back.boundaries[1].rigging.kind() == MapKind::sampled);
    CHECK(back.io_labels == s.io_labels);
    CHECK(io::rigged_sphere_json(back) == text);
}

TEST_CASE("invalid rigged sphere files are rejected") {
    RiggedSphere bad;
    bad.model = SphereModel::border;
    bad.boundaries.push_back(BoundaryCircle{cpx(0.0), 1.0, CircleMap::identity()});
    bad.boundaries.push_back(BoundaryCircle{cpx(1.0), 1.0, CircleMap::identity()});
    const std::string text = io::rigged_sphere_json(bad);  // writer does not validate
    CHECK_THROWS_AS((void)io::parse_rigged_sphere_json(text, "."), InputError);
}

TEST_CASE("sampled riggings can live in side files") {
    const fs::path dir = scratch_dir();
    io::save_circle_map(dir / "rig.csv", wavy());
    const std::string text = R"({
  "format": "rigged-sphere",
  "model": "border",
  "marked": [[0, 5]],
  "boundaries": [
    {"center": [0, 0], "radius": 1, "rigging": {"kind": "sampled", "file": "rig.csv"}}
  ]
})";
    const RiggedSphere s = io::parse_rigged_sphere_json(text, dir);
    REQUIRE(s.boundaries.size() == 1);
    CHECK(lift_distance(s.boundaries[0].rigging, wavy()) <= 1e-12);
}

TEST_CASE("family spec files select canned families with overrides") {
    const io::FamilyFile plain =
        io::parse_family_file(io::family_file_json("marked-point", 1e-6), ".");
    CHECK(plain.spec.kind == FamilyKind::marked_point);
    CHECK(plain.threshold == 1e-6);

    const std::string text = R"({
  "format": "family-spec",
  "family": "synthetic-cubic",
  "t_radius": 0.5,
  "sew": {"n": 256, "seam_tol": 0.05}
})";
    const io::FamilyFile tuned = io::parse_family_file(text, ".");
    CHECK(tuned.spec.kind == FamilyKind::synthetic);
    CHECK(tuned.spec.synth == SyntheticForm::cubic);
    CHECK(tuned.spec.t_radius == 0.5);
    CHECK(tuned.spec.sew.n == 256);
    CHECK(tuned.spec.sew.seam_tol == 0.05);
    CHECK(tuned.threshold == 1e-6);  // table default for the cubic family

    CHECK_THROWS_AS((void)io::parse_family_file(io::family_file_json("no-such", 1.0), "."),
                    InputError);
}

TEST_CASE("run manifest round trip") {
    io::RunManifest m;
    m.tool_version = io::kToolVersion;
    m.argv = {"qs", "input.csv", "--depth", "8"};
    m.inputs = {{"input.csv", io::digest_bytes("x")}};
    m.parameters = {{"depth", "8"}};
    m.outputs = {{"out.json", io::digest_bytes("y")}};
    m.wall_time_s = 0.25;

    const std::string text = io::manifest_json(m);
    const io::RunManifest back = io::parse_manifest_json(text);
    CHECK(back.tool_version == m.tool_version);
    CHECK(back.argv == m.argv);
    CHECK(back.inputs == m.inputs);
    CHECK(back.parameters == m.parameters);
    CHECK(back.outputs == m.outputs);
    CHECK(back.wall_time_s == m.wall_time_s);
    CHECK(io::manifest_json(back) == text);
}

TEST_CASE("result documents carry their headline fields") {
    const std::string qs = io::qs_json(qs_constant(CircleMap::identity(), 4));
    CHECK(qs.find("\"format\": \"qs-estimate\"") != std::string::npos);
    CHECK(qs.find("\"k\": 1") != std::string::npos);

    const std::string wj = io::welding_json(weld(CircleMap::identity(256)));
    CHECK(wj.find("\"format\": \"welding-pair\"") != std::string::npos);
    CHECK(wj.find("\"residual\":") != std::string::npos);
    CHECK(wj.find("\"f_boundary\"") != std::string::npos);
    CHECK(wj.find("\"g_boundary\"") != std::string::npos);

    const CRReport rep =
        holomorphy_report(synthetic_family(SyntheticForm::linear), square_grid3(0.05), 1e-3);
    const std::string csv = io::cr_report_csv(rep);
    CHECK(csv.rfind("t_re,t_im,d_t,d_tbar\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 10);
    const std::string summary = io::cr_summary_json(rep, 1e-6);
    CHECK(summary.find("\"pass\": true") != std::string::npos);
}

TEST_CASE("curve svg is deterministic and well formed") {
    const std::vector<cpx> square = {cpx(0, 0), cpx(1, 0), cpx(1, 1), cpx(0, 1)};
    const std::string svg = io::curve_svg(square);
    CHECK(svg.find("<svg") != std::string::npos);
    CHECK(svg.find("viewBox=") != std::string::npos);
    CHECK(svg.find("<path") != std::string::npos);
    CHECK(io::curve_svg(square) == svg);
    CHECK_THROWS_AS((void)io::curve_svg({}), InputError);
}
