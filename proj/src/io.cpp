#include "weldlab/io.hpp"

#include <charconv>
#include <cstdint>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace weldlab::io {

using json = nlohmann::ordered_json;

std::string format_double(double x) {
    char buf[40];
    const auto res = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, res.ptr);
}

std::string digest_bytes(std::string_view bytes) {
    uint64_t h = 14695981039346656037ull;
    for (const char c : bytes) {
        h ^= static_cast<unsigned char>(c);
        h *= 1099511628211ull;
    }
    char buf[17];
    for (int i = 15; i >= 0; --i) {
        buf[i] = "0123456789abcdef"[h & 0xf];
        h >>= 4;
    }
    buf[16] = '\0';
    return std::string("fnv1a64:") + buf;
}

std::string read_text_file(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw InputError("cannot read " + p.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return std::move(buf).str();
}

void write_text_file(const std::filesystem::path& p, std::string_view text) {
    std::ofstream out(p, std::ios::binary | std::ios::trunc);
    if (!out) throw InputError("cannot write " + p.string());
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!out) throw InputError("short write to " + p.string());
}

std::string digest_file(const std::filesystem::path& p) { return digest_bytes(read_text_file(p)); }

namespace {

json jcpx(cpx z) { return json::array({z.real(), z.imag()}); }

cpx as_cpx(const json& v, const char* what) {
    if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number())
        throw InputError(std::string(what) + ": expected [re, im]");
    return {v[0].get<double>(), v[1].get<double>()};
}

json parse_checked(const std::string& text, const char* what) {
    json doc = json::parse(text, nullptr, false);
    if (doc.is_discarded()) throw InputError(std::string(what) + ": malformed json");
    return doc;
}

// .at() lookups raise nlohmann exceptions; convert to the input taxonomy.
template <class F>
auto reading(const char* what, F&& body) {
    try {
        return body();
    } catch (const json::exception& e) {
        throw InputError(std::string(what) + ": " + e.what());
    }
}

const char* interp_tag(InterpKind k) {
    return k == InterpKind::linear ? "linear" : "monotone-cubic";
}

InterpKind parse_interp(std::string_view tag, const char* what) {
    if (tag == "monotone-cubic") return InterpKind::monotone_cubic;
    if (tag == "linear") return InterpKind::linear;
    throw InputError(std::string(what) + ": unknown interp tag '" + std::string(tag) + "'");
}

double parse_number(std::string_view field, const char* what) {
    double value = 0.0;
    const char* first = field.data();
    const char* last = field.data() + field.size();
    const auto res = std::from_chars(first, last, value);
    if (res.ec != std::errc() || res.ptr != last)
        throw InputError(std::string(what) + ": bad number '" + std::string(field) + "'");
    return value;
}

}  // namespace

// ---- CircleMap CSV ---------------------------------------------------------

std::string circle_map_csv(const CircleMap& m) {
    std::string out = "n=" + std::to_string(m.n()) + ",interp=" + interp_tag(m.interp()) + "\n";
    const auto& lift = m.lift_samples();
    for (int k = 0; k < m.n(); ++k) {
        out += format_double(kTwoPi * k / m.n());
        out += ',';
        out += format_double(lift[static_cast<size_t>(k)]);
        out += '\n';
    }
    return out;
}

CircleMap parse_circle_map_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw InputError("circle map csv: empty input");
    int n = 0;
    char tag[32] = {};
    if (std::sscanf(line.c_str(), "n=%d,interp=%31s", &n, tag) != 2 || n <= 0)
        throw InputError("circle map csv: bad header '" + line + "'");
    const InterpKind interp = parse_interp(tag, "circle map csv");

    std::vector<double> theta, lift;
    theta.reserve(static_cast<size_t>(n));
    lift.reserve(static_cast<size_t>(n));
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const size_t comma = line.find(',');
        if (comma == std::string::npos)
            throw InputError("circle map csv: bad row '" + line + "'");
        theta.push_back(parse_number(std::string_view(line).substr(0, comma), "circle map csv"));
        lift.push_back(parse_number(std::string_view(line).substr(comma + 1), "circle map csv"));
    }
    if (static_cast<int>(theta.size()) != n)
        throw InputError("circle map csv: expected " + std::to_string(n) + " rows, got " +
                         std::to_string(theta.size()));
    if (std::abs(theta[0]) > 1e-12) throw InputError("circle map csv: theta must start at 0");
    for (size_t k = 1; k < theta.size(); ++k)
        if (theta[k] <= theta[k - 1] || theta[k] >= kTwoPi)
            throw InputError("circle map csv: theta must increase strictly within [0, 2pi)");

    // off-grid theta: resample the polyline through the given nodes
    bool uniform = true;
    for (size_t k = 0; k < theta.size() && uniform; ++k)
        uniform = std::abs(theta[k] - kTwoPi * static_cast<double>(k) / n) <= 1e-9;
    if (!uniform) {
        std::vector<double> resampled(static_cast<size_t>(n));
        size_t j = 0;
        for (int k = 0; k < n; ++k) {
            const double t = kTwoPi * k / n;
            while (j + 1 < theta.size() && theta[j + 1] <= t) ++j;
            const double t0 = theta[j];
            const double t1 = j + 1 < theta.size() ? theta[j + 1] : theta[0] + kTwoPi;
            const double l0 = lift[j];
            const double l1 = j + 1 < lift.size() ? lift[j + 1] : lift[0] + kTwoPi;
            resampled[static_cast<size_t>(k)] = l0 + (l1 - l0) * (t - t0) / (t1 - t0);
        }
        lift = std::move(resampled);
    }
    return classify_exact_kind(CircleMap::from_lift_samples(std::move(lift), interp));
}

void save_circle_map(const std::filesystem::path& p, const CircleMap& m) {
    write_text_file(p, circle_map_csv(m));
}

CircleMap load_circle_map(const std::filesystem::path& p) {
    std::istringstream in(read_text_file(p));
    return parse_circle_map_csv(in);
}

// ---- BeltramiField JSON ----------------------------------------------------

namespace {

json grid_to_json(const GridSpec& grid) {
    json out;
    if (const auto* r = std::get_if<RectGrid>(&grid)) {
        out["type"] = "rect";
        out["nx"] = r->nx;
        out["ny"] = r->ny;
        out["x0"] = r->x0;
        out["y0"] = r->y0;
        out["dx"] = r->dx;
        out["dy"] = r->dy;
    } else {
        const auto& p = std::get<PolarGrid>(grid);
        out["type"] = "polar";
        out["nr"] = p.nr;
        out["ntheta"] = p.ntheta;
        out["r0"] = p.r0;
        out["r1"] = p.r1;
    }
    return out;
}

GridSpec grid_from_json(const json& g) {
    const std::string type = g.at("type").get<std::string>();
    if (type == "rect") {
        RectGrid r;
        r.nx = g.at("nx").get<int>();
        r.ny = g.at("ny").get<int>();
        r.x0 = g.at("x0").get<double>();
        r.y0 = g.at("y0").get<double>();
        r.dx = g.at("dx").get<double>();
        r.dy = g.at("dy").get<double>();
        if (r.nx <= 0 || r.ny <= 0) throw InputError("grid: nonpositive resolution");
        return r;
    }
    if (type == "polar") {
        PolarGrid p;
        p.nr = g.at("nr").get<int>();
        p.ntheta = g.at("ntheta").get<int>();
        p.r0 = g.at("r0").get<double>();
        p.r1 = g.at("r1").get<double>();
        if (p.nr <= 1 || p.ntheta <= 0) throw InputError("grid: nonpositive resolution");
        return p;
    }
    throw InputError("grid: unknown type '" + type + "'");
}

size_t grid_size(const GridSpec& grid) {
    return std::visit([](const auto& g) { return g.size(); }, grid);
}

}  // namespace

std::string beltrami_json(const BeltramiField& f) {
    json doc;
    doc["format"] = "beltrami-field";
    doc["grid"] = grid_to_json(f.grid);
    doc["sup_norm"] = f.sup_norm;
    doc["support_radius"] = f.support_radius;
    json mu = json::array();
    for (const cpx v : f.mu) mu.push_back(jcpx(v));
    doc["mu"] = std::move(mu);
    return doc.dump(2) + "\n";
}

BeltramiField parse_beltrami_json(const std::string& text) {
    return reading("beltrami json", [&] {
        const json doc = parse_checked(text, "beltrami json");
        if (doc.value("format", "") != "beltrami-field")
            throw InputError("beltrami json: missing format tag");
        BeltramiField f;
        f.grid = grid_from_json(doc.at("grid"));
        f.sup_norm = doc.at("sup_norm").get<double>();
        f.support_radius = doc.at("support_radius").get<double>();
        const json& mu = doc.at("mu");
        if (mu.size() != grid_size(f.grid))
            throw InputError("beltrami json: sample count does not match the grid");
        f.mu.reserve(mu.size());
        for (const auto& v : mu) f.mu.push_back(as_cpx(v, "beltrami json"));
        const double sup = BeltramiField::computed_sup(f.mu);
        if (std::abs(sup - f.sup_norm) > 1e-12)
            throw InputError("beltrami json: stored sup_norm " + format_double(f.sup_norm) +
                             " does not match recomputed " + format_double(sup));
        return f;
    });
}

void save_beltrami(const std::filesystem::path& p, const BeltramiField& f) {
    write_text_file(p, beltrami_json(f));
}

BeltramiField load_beltrami(const std::filesystem::path& p) {
    return parse_beltrami_json(read_text_file(p));
}

// ---- RiggedSphere JSON -----------------------------------------------------

namespace {

json rigging_to_json(const CircleMap& m) {
    json out;
    switch (m.kind()) {
        case MapKind::identity:
            out["kind"] = "identity";
            out["n"] = m.n();
            break;
        case MapKind::mobius: {
            out["kind"] = "mobius";
            out["n"] = m.n();
            const Mobius mat = m.mobius_matrix();
            out["coefficients"] = json::array({jcpx(mat.a), jcpx(mat.b), jcpx(mat.c), jcpx(mat.d)});
            break;
        }
        case MapKind::sampled: {
            out["kind"] = "sampled";
            out["n"] = m.n();
            out["interp"] = interp_tag(m.interp());
            json lift = json::array();
            for (const double v : m.lift_samples()) lift.push_back(v);
            out["lift"] = std::move(lift);
            break;
        }
    }
    return out;
}

CircleMap rigging_from_json(const json& r, const std::filesystem::path& base_dir) {
    const std::string kind = r.at("kind").get<std::string>();
    if (kind == "identity") return CircleMap::identity(r.value("n", 1024));
    if (kind == "mobius") {
        const json& c = r.at("coefficients");
        if (c.size() != 4) throw InputError("rigging: mobius needs 4 coefficients");
        return CircleMap::mobius(as_cpx(c[0], "rigging"), as_cpx(c[1], "rigging"),
                                 as_cpx(c[2], "rigging"), as_cpx(c[3], "rigging"),
                                 r.value("n", 1024));
    }
    if (kind == "sampled") {
        if (r.contains("file"))
            return load_circle_map(base_dir / r.at("file").get<std::string>());
        const json& lift_json = r.at("lift");
        std::vector<double> lift;
        lift.reserve(lift_json.size());
        for (const auto& v : lift_json) lift.push_back(v.get<double>());
        const InterpKind interp = parse_interp(r.value("interp", "monotone-cubic"), "rigging");
        return classify_exact_kind(CircleMap::from_lift_samples(std::move(lift), interp));
    }
    throw InputError("rigging: unknown kind '" + kind + "'");
}

json point_to_json(const SpherePoint& q) {
    if (q.is_infinite()) return json("inf");
    return jcpx(q.value());
}

SpherePoint point_from_json(const json& v, const char* what) {
    if (v.is_string()) {
        if (v.get<std::string>() == "inf") return SpherePoint::infinity();
        throw InputError(std::string(what) + ": points are [re, im] or \"inf\"");
    }
    return SpherePoint(as_cpx(v, what));
}

json mobius_to_json(const Mobius& m) {
    return json::array({jcpx(m.a), jcpx(m.b), jcpx(m.c), jcpx(m.d)});
}

Mobius mobius_from_json(const json& v, const char* what) {
    if (!v.is_array() || v.size() != 4)
        throw InputError(std::string(what) + ": mobius needs 4 coefficients");
    return Mobius{as_cpx(v[0], what), as_cpx(v[1], what), as_cpx(v[2], what), as_cpx(v[3], what)};
}

}  // namespace

std::string rigged_sphere_json(const RiggedSphere& s) {
    json doc;
    doc["format"] = "rigged-sphere";
    doc["model"] = s.model == SphereModel::border ? "border" : "puncture";
    json marked = json::array();
    for (const auto& q : s.marked) marked.push_back(point_to_json(q));
    doc["marked"] = std::move(marked);
    if (s.model == SphereModel::border) {
        json boundaries = json::array();
        for (const auto& b : s.boundaries) {
            json rec;
            rec["center"] = jcpx(b.center);
            rec["radius"] = b.radius;
            rec["rigging"] = rigging_to_json(b.rigging);
            boundaries.push_back(std::move(rec));
        }
        doc["boundaries"] = std::move(boundaries);
    } else {
        json punctures = json::array();
        for (const auto& c : s.riggings_punct) {
            json rec;
            rec["geometry"] = mobius_to_json(c.geometry);
            rec["distortion"] = c.distortion ? rigging_to_json(*c.distortion) : json(nullptr);
            punctures.push_back(std::move(rec));
        }
        doc["punctures"] = std::move(punctures);
    }
    json labels = json::array();
    for (const auto& l : s.io_labels) labels.push_back(l);
    doc["io_labels"] = std::move(labels);
    return doc.dump(2) + "\n";
}

RiggedSphere parse_rigged_sphere_json(const std::string& text,
                                      const std::filesystem::path& base_dir) {
    return reading("rigged sphere json", [&] {
        const json doc = parse_checked(text, "rigged sphere json");
        if (doc.value("format", "") != "rigged-sphere")
            throw InputError("rigged sphere json: missing format tag");
        RiggedSphere s;
        const std::string model = doc.at("model").get<std::string>();
        if (model == "border")
            s.model = SphereModel::border;
        else if (model == "puncture")
            s.model = SphereModel::puncture;
        else
            throw InputError("rigged sphere json: unknown model '" + model + "'");
        for (const auto& q : doc.at("marked"))
            s.marked.push_back(point_from_json(q, "rigged sphere json"));
        if (s.model == SphereModel::border) {
            for (const auto& rec : doc.value("boundaries", json::array())) {
                BoundaryCircle b;
                b.center = as_cpx(rec.at("center"), "rigged sphere json");
                b.radius = rec.at("radius").get<double>();
                b.rigging = rigging_from_json(rec.at("rigging"), base_dir);
                s.boundaries.push_back(std::move(b));
            }
        } else {
            for (const auto& rec : doc.value("punctures", json::array())) {
                PunctureChart c;
                c.geometry = mobius_from_json(rec.at("geometry"), "rigged sphere json");
                const json& d = rec.at("distortion");
                if (!d.is_null()) c.distortion = rigging_from_json(d, base_dir);
                s.riggings_punct.push_back(std::move(c));
            }
        }
        for (const auto& l : doc.value("io_labels", json::array()))
            s.io_labels.push_back(l.get<std::string>());
        validate(s);
        return s;
    });
}

void save_rigged_sphere(const std::filesystem::path& p, const RiggedSphere& s) {
    write_text_file(p, rigged_sphere_json(s));
}

RiggedSphere load_rigged_sphere(const std::filesystem::path& p) {
    return parse_rigged_sphere_json(read_text_file(p), p.parent_path());
}

// ---- result documents ------------------------------------------------------

std::string qs_json(const QsEstimate& e) {
    json doc;
    doc["format"] = "qs-estimate";
    if (std::isfinite(e.k))
        doc["k"] = e.k;
    else
        doc["k"] = "inf";
    json scales = json::array();
    for (const double s : e.scales) scales.push_back(s);
    doc["scales"] = std::move(scales);
    doc["worst_site"] = json::array({e.worst_x, e.worst_y});
    return doc.dump(2) + "\n";
}

std::string welding_json(const WeldingPair& pair) {
    const int n = static_cast<int>(pair.omega_boundary.size());
    json doc;
    doc["format"] = "welding-pair";
    doc["n"] = n;
    doc["residual"] = pair.residual;

    const cpx f0 = pair.f(cpx(0.0));
    const cpx f1 = n > 0 ? pair.omega_boundary[0] : pair.f(cpx(1.0));
    const cpx fm1 = n > 0 ? pair.omega_boundary[static_cast<size_t>(n / 2)] : pair.f(cpx(-1.0));
    json cert;
    cert["mobius"] = mobius_to_json(pair.normalization);
    cert["fixes"] = json{{"zero", jcpx(f0)}, {"one", jcpx(f1)}, {"minus_one", jcpx(fm1)}};
    cert["defect"] = std::max({std::abs(f0), std::abs(f1 - 1.0), std::abs(fm1 + 1.0)});
    doc["normalization"] = std::move(cert);

    json fb = json::array();
    for (const cpx z : pair.omega_boundary) fb.push_back(jcpx(z));
    doc["f_boundary"] = std::move(fb);
    json gb = json::array();
    for (int k = 0; k < n; ++k) gb.push_back(jcpx(pair.g(std::polar(1.0, kTwoPi * k / n))));
    doc["g_boundary"] = std::move(gb);
    return doc.dump(2) + "\n";
}

std::string sewn_json(const SewnSurface& s,
                      const std::map<std::string, std::string>& input_digests) {
    json doc;
    doc["format"] = "sewn-surface";
    json inputs;
    for (const auto& [label, digest] : input_digests) inputs[label] = digest;
    doc["inputs"] = std::move(inputs);
    doc["seam_residual"] = s.welding.residual;
    json marked = json::array();
    for (const auto& q : s.result.marked) marked.push_back(point_to_json(q));
    doc["marked"] = std::move(marked);
    json mod = json::array();
    for (const cpx v : moduli_of_sewn(s)) mod.push_back(jcpx(v));
    doc["moduli"] = std::move(mod);
    return doc.dump(2) + "\n";
}

std::string cr_report_csv(const CRReport& r) {
    std::string out = "t_re,t_im,d_t,d_tbar\n";
    for (const auto& row : r.rows) {
        out += format_double(row.t.real());
        out += ',';
        out += format_double(row.t.imag());
        out += ',';
        out += format_double(row.d_t);
        out += ',';
        out += format_double(row.d_tbar);
        out += '\n';
    }
    return out;
}

std::string cr_summary_json(const CRReport& r, double threshold) {
    json doc;
    doc["format"] = "holomorphy-summary";
    doc["ratio"] = r.ratio;
    doc["threshold"] = threshold;
    doc["pass"] = r.ratio <= threshold;
    doc["delta"] = r.delta;
    doc["richardson"] = json{{"d_t", r.richardson.d_t}, {"d_tbar", r.richardson.d_tbar}};
    doc["warning"] = r.warning;
    return doc.dump(2) + "\n";
}

std::string curve_svg(const std::vector<cpx>& curve) {
    if (curve.empty()) throw InputError("svg: empty curve");
    double xmin = curve[0].real(), xmax = xmin, ymin = -curve[0].imag(), ymax = ymin;
    for (const cpx z : curve) {
        xmin = std::min(xmin, z.real());
        xmax = std::max(xmax, z.real());
        ymin = std::min(ymin, -z.imag());
        ymax = std::max(ymax, -z.imag());
    }
    const double span = std::max({xmax - xmin, ymax - ymin, 1e-9});
    const double margin = 0.05 * span;
    std::string d = "M";
    for (const cpx z : curve) {
        d += ' ';
        d += format_double(z.real());
        d += ' ';
        d += format_double(-z.imag());
    }
    d += " Z";
    std::string out = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"512\" height=\"512\" ";
    out += "viewBox=\"" + format_double(xmin - margin) + " " + format_double(ymin - margin) + " " +
           format_double(span + 2 * margin) + " " + format_double(span + 2 * margin) + "\">\n";
    out += "<path d=\"" + d + "\" fill=\"none\" stroke=\"black\" stroke-width=\"" +
           format_double(span / 256.0) + "\"/>\n</svg>\n";
    return out;
}

// ---- family specs ----------------------------------------------------------

namespace {

struct FamilyName {
    const char* name;
    FamilyKind kind;
    SyntheticForm form;
    double default_threshold;
};

constexpr FamilyName kFamilyNames[] = {
    {"marked-point", FamilyKind::marked_point, SyntheticForm::linear, 1e-6},
    {"beltrami-path", FamilyKind::beltrami_path, SyntheticForm::linear, 1e-2},
    {"rigging-path", FamilyKind::rigging_path, SyntheticForm::linear, 1e-2},
    {"synthetic-linear", FamilyKind::synthetic, SyntheticForm::linear, 1e-6},
    {"synthetic-cubic", FamilyKind::synthetic, SyntheticForm::cubic, 1e-6},
    {"synthetic-conjugate", FamilyKind::synthetic, SyntheticForm::conjugate, 1e-2},
};

FamilySpec canned_family(const FamilyName& f) {
    switch (f.kind) {
        case FamilyKind::marked_point: return marked_point_family();
        case FamilyKind::beltrami_path: return beltrami_path_family();
        case FamilyKind::rigging_path: return rigging_path_family();
        case FamilyKind::synthetic: return synthetic_family(f.form);
    }
    throw InputError("family spec: unknown kind");
}

}  // namespace

std::string family_file_json(const std::string& family_name, double threshold) {
    json doc;
    doc["format"] = "family-spec";
    doc["family"] = family_name;
    doc["threshold"] = threshold;
    return doc.dump(2) + "\n";
}

FamilyFile parse_family_file(const std::string& text, const std::filesystem::path& base_dir) {
    return reading("family spec json", [&] {
        const json doc = parse_checked(text, "family spec json");
        if (doc.value("format", "") != "family-spec")
            throw InputError("family spec json: missing format tag");
        const std::string name = doc.at("family").get<std::string>();
        const FamilyName* entry = nullptr;
        for (const auto& f : kFamilyNames)
            if (name == f.name) entry = &f;
        if (!entry) throw InputError("family spec json: unknown family '" + name + "'");

        FamilyFile out;
        out.spec = canned_family(*entry);
        out.threshold = doc.value("threshold", entry->default_threshold);
        if (doc.contains("t_radius")) out.spec.t_radius = doc.at("t_radius").get<double>();
        if (doc.contains("grid_n")) out.spec.grid_n = doc.at("grid_n").get<int>();
        if (doc.contains("probe")) out.spec.probe = as_cpx(doc.at("probe"), "family spec json");
        if (doc.contains("nu")) {
            const json& nu = doc.at("nu");
            if (nu.is_string())
                out.spec.nu = load_beltrami(base_dir / nu.get<std::string>());
            else
                out.spec.nu = parse_beltrami_json(nu.dump());
        }
        if (doc.contains("sew")) {
            const json& sew = doc.at("sew");
            if (sew.contains("n")) out.spec.sew.n = sew.at("n").get<int>();
            if (sew.contains("seam_tol"))
                out.spec.sew.seam_tol = sew.at("seam_tol").get<double>();
        }
        return out;
    });
}

FamilyFile load_family_file(const std::filesystem::path& p) {
    return parse_family_file(read_text_file(p), p.parent_path());
}

// ---- run manifests ---------------------------------------------------------

std::string manifest_json(const RunManifest& m) {
    json doc;
    doc["format"] = "run-manifest";
    doc["tool_version"] = m.tool_version;
    doc["command"] = m.argv.empty() ? std::string() : m.argv[0];
    json argv = json::array();
    for (const auto& a : m.argv) argv.push_back(a);
    doc["argv"] = std::move(argv);
    json inputs;
    for (const auto& [path, digest] : m.inputs) inputs[path] = digest;
    doc["inputs"] = std::move(inputs);
    json params;
    for (const auto& [key, value] : m.parameters) params[key] = value;
    doc["parameters"] = std::move(params);
    json outputs;
    for (const auto& [path, digest] : m.outputs) outputs[path] = digest;
    doc["outputs"] = std::move(outputs);
    doc["wall_time_s"] = m.wall_time_s;
    return doc.dump(2) + "\n";
}

RunManifest parse_manifest_json(const std::string& text) {
    return reading("run manifest", [&] {
        const json doc = parse_checked(text, "run manifest");
        if (doc.value("format", "") != "run-manifest")
            throw InputError("run manifest: missing format tag");
        RunManifest m;
        m.tool_version = doc.at("tool_version").get<std::string>();
        for (const auto& a : doc.at("argv")) m.argv.push_back(a.get<std::string>());
        for (const auto& [path, digest] : doc.at("inputs").items())
            m.inputs[path] = digest.get<std::string>();
        for (const auto& [key, value] : doc.at("parameters").items())
            m.parameters[key] = value.get<std::string>();
        for (const auto& [path, digest] : doc.at("outputs").items())
            m.outputs[path] = digest.get<std::string>();
        m.wall_time_s = doc.at("wall_time_s").get<double>();
        return m;
    });
}

void save_manifest(const std::filesystem::path& p, const RunManifest& m) {
    write_text_file(p, manifest_json(m));
}

RunManifest load_manifest(const std::filesystem::path& p) {
    return parse_manifest_json(read_text_file(p));
}

}  // namespace weldlab::io
