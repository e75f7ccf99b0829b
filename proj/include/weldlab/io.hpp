#pragma once
// File formats and run manifests.
//
//   CircleMap      CSV   header "n=<int>,interp=<tag>", then n rows theta,lift
//   BeltramiField  JSON  grid descriptor + row-major [re, im] pairs
//   RiggedSphere   JSON  model, marked points, boundaries with riggings
//   results        JSON / CSV / SVG documents for the CLI subcommands
//
// Every writer is deterministic: fixed field order (ordered json), floats in
// shortest round-trip decimal, newline-terminated. Readers validate and throw
// InputError on malformed content, so the CLI can map them to exit code 2.

#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "weldlab/circle_map.hpp"
#include "weldlab/grids.hpp"
#include "weldlab/holomorphy.hpp"
#include "weldlab/qs.hpp"
#include "weldlab/rigged_spheres.hpp"
#include "weldlab/sewing.hpp"
#include "weldlab/welding.hpp"

namespace weldlab::io {

inline constexpr const char* kToolVersion = "weldlab 0.1.0";

// Shortest decimal string that parses back to exactly x.
[[nodiscard]] std::string format_double(double x);

// FNV-1a 64 content hash, rendered "fnv1a64:<16 hex digits>".
[[nodiscard]] std::string digest_bytes(std::string_view bytes);
[[nodiscard]] std::string digest_file(const std::filesystem::path& p);

[[nodiscard]] std::string read_text_file(const std::filesystem::path& p);
void write_text_file(const std::filesystem::path& p, std::string_view text);

// ---- CircleMap CSV ---------------------------------------------------------
// Rows carry the uniform grid theta_k = 2 pi k / n; a reader given strictly
// increasing but non-uniform theta resamples the lift linearly onto that
// grid. Loaded maps are snapped through classify_exact_kind so an identity
// or möbius table round-trips to its closed form.
[[nodiscard]] std::string circle_map_csv(const CircleMap& m);
[[nodiscard]] CircleMap parse_circle_map_csv(std::istream& in);
void save_circle_map(const std::filesystem::path& p, const CircleMap& m);
[[nodiscard]] CircleMap load_circle_map(const std::filesystem::path& p);

// ---- BeltramiField JSON ----------------------------------------------------
// sup_norm is stored and recomputed on load; a mismatch beyond 1e-12 rejects
// the file (stale or hand-edited data).
[[nodiscard]] std::string beltrami_json(const BeltramiField& f);
[[nodiscard]] BeltramiField parse_beltrami_json(const std::string& text);
void save_beltrami(const std::filesystem::path& p, const BeltramiField& f);
[[nodiscard]] BeltramiField load_beltrami(const std::filesystem::path& p);

// ---- RiggedSphere JSON -----------------------------------------------------
// Marked points are [re, im] pairs or the string "inf". Each boundary holds
// center, radius and a rigging object {kind, ...}: identity and möbius kinds
// inline their coefficients, sampled kinds either inline the lift or point
// at a CircleMap CSV by relative path (resolved against base_dir). Loaded
// spheres pass validate().
[[nodiscard]] std::string rigged_sphere_json(const RiggedSphere& s);
[[nodiscard]] RiggedSphere parse_rigged_sphere_json(const std::string& text,
                                                    const std::filesystem::path& base_dir);
void save_rigged_sphere(const std::filesystem::path& p, const RiggedSphere& s);
[[nodiscard]] RiggedSphere load_rigged_sphere(const std::filesystem::path& p);

// ---- result documents ------------------------------------------------------
[[nodiscard]] std::string qs_json(const QsEstimate& e);

// Boundary sample arrays for f(S^1) and g(S^1), the residual, and the
// normalization certificate (the möbius plus the measured defect at 1, 0, -1).
[[nodiscard]] std::string welding_json(const WeldingPair& pair);

// Input digests (label -> digest), seam residual, transported marked points,
// moduli vector.
[[nodiscard]] std::string sewn_json(const SewnSurface& s,
                                    const std::map<std::string, std::string>& input_digests);

[[nodiscard]] std::string cr_report_csv(const CRReport& r);
[[nodiscard]] std::string cr_summary_json(const CRReport& r, double threshold);

// Closed-curve outline (polyline through the samples), y axis flipped to
// match screen orientation.
[[nodiscard]] std::string curve_svg(const std::vector<cpx>& curve);

// ---- family specs ----------------------------------------------------------
// {"family": <name>, "threshold": <ratio bound>} with optional overrides
// (t_radius, grid_n, probe, nu inline or by file, sew.n, sew.seam_tol).
// Names: marked-point, beltrami-path, rigging-path, synthetic-linear,
// synthetic-cubic, synthetic-conjugate.
struct FamilyFile {
    FamilySpec spec;
    double threshold = 1e-2;
};
[[nodiscard]] std::string family_file_json(const std::string& family_name, double threshold);
[[nodiscard]] FamilyFile parse_family_file(const std::string& text,
                                           const std::filesystem::path& base_dir);
[[nodiscard]] FamilyFile load_family_file(const std::filesystem::path& p);

// ---- run manifests ---------------------------------------------------------
struct RunManifest {
    std::string tool_version;
    std::vector<std::string> argv;  // subcommand followed by its flags
    std::map<std::string, std::string> inputs;      // path -> digest
    std::map<std::string, std::string> parameters;  // flag -> rendered value
    std::map<std::string, std::string> outputs;     // path -> digest
    double wall_time_s = 0.0;
};
[[nodiscard]] std::string manifest_json(const RunManifest& m);
[[nodiscard]] RunManifest parse_manifest_json(const std::string& text);
void save_manifest(const std::filesystem::path& p, const RunManifest& m);
[[nodiscard]] RunManifest load_manifest(const std::filesystem::path& p);

}  // namespace weldlab::io
