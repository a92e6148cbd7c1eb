#include "cws/io.hpp"

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <string>

#include "cws/diagnostics.hpp"
#include "cws/errors.hpp"
#include "cws/metric.hpp"

namespace cws {

namespace fs = std::filesystem;

std::string format_double(double v) {
    char buf[40];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

namespace {

[[noreturn]] void parse_fail(const std::string& path, int line, const std::string& msg) {
    throw ParseError(path + ":" + std::to_string(line) + ": " + msg);
}

double parse_number(const std::string& tok, const std::string& path, int line) {
    try {
        std::size_t used = 0;
        const double v = std::stod(tok, &used);
        if (used != tok.size()) parse_fail(path, line, "trailing characters in number '" + tok + "'");
        if (!std::isfinite(v)) parse_fail(path, line, "non-finite number '" + tok + "'");
        return v;
    } catch (const std::invalid_argument&) {
        parse_fail(path, line, "expected a number, got '" + tok + "'");
    } catch (const std::out_of_range&) {
        parse_fail(path, line, "number out of range: '" + tok + "'");
    }
}

int parse_int(const std::string& tok, const std::string& path, int line) {
    int v = 0;
    const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (res.ec != std::errc{} || res.ptr != tok.data() + tok.size())
        parse_fail(path, line, "expected an integer, got '" + tok + "'");
    return v;
}

std::vector<std::string> tokens_of(const std::string& line) {
    std::istringstream in(line);
    std::vector<std::string> toks;
    std::string t;
    while (in >> t) {
        if (t[0] == '#') break;
        toks.push_back(t);
    }
    return toks;
}

std::ifstream open_input(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(path + ": cannot open file");
    return in;
}

std::ofstream open_output(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ParseError(path + ": cannot open file for writing");
    return out;
}

std::string resolve(const std::string& scene_path, const std::string& rel) {
    if (rel.empty() || fs::path(rel).is_absolute()) return rel;
    return (fs::path(scene_path).parent_path() / rel).string();
}

} // namespace

Shape read_obj(const std::string& path) {
    std::ifstream in = open_input(path);
    std::vector<Eigen::Vector3d> verts;
    std::vector<std::array<int, 3>> faces;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto toks = tokens_of(line);
        if (toks.empty()) continue;
        if (toks[0] == "v") {
            if (toks.size() != 4) parse_fail(path, lineno, "vertex record needs 3 coordinates");
            verts.emplace_back(parse_number(toks[1], path, lineno),
                               parse_number(toks[2], path, lineno),
                               parse_number(toks[3], path, lineno));
        } else if (toks[0] == "f") {
            if (toks.size() != 4)
                throw NonTriangleFace(path + ":" + std::to_string(lineno) +
                                      ": face with " + std::to_string(toks.size() - 1) +
                                      " vertices (triangles only)");
            std::array<int, 3> f{};
            for (int c = 0; c < 3; ++c) {
                std::string t = toks[c + 1];
                if (const auto slash = t.find('/'); slash != std::string::npos) t = t.substr(0, slash);
                const int idx = parse_int(t, path, lineno);
                if (idx < 1 || idx > static_cast<int>(verts.size()))
                    parse_fail(path, lineno, "face index " + t + " out of range");
                f[c] = idx - 1;
            }
            faces.push_back(f);
        } else if (toks[0] == "vn" || toks[0] == "vt" || toks[0] == "o" || toks[0] == "g" ||
                   toks[0] == "s" || toks[0] == "mtllib" || toks[0] == "usemtl") {
            continue;
        } else {
            parse_fail(path, lineno, "unsupported record '" + toks[0] + "'");
        }
    }
    Shape s;
    s.f.resize(3, static_cast<int>(verts.size()));
    for (int i = 0; i < static_cast<int>(verts.size()); ++i) s.f.col(i) = verts[i];
    s.surface = build_surface(faces, static_cast<int>(verts.size()));
    return s;
}

void write_obj(const std::string& path, const PrimalForm0V& f, const SimplicialSurface& s) {
    std::ofstream out = open_output(path);
    for (int i = 0; i < s.nv(); ++i)
        out << "v " << format_double(f(0, i)) << ' ' << format_double(f(1, i)) << ' '
            << format_double(f(2, i)) << '\n';
    for (const auto& face : s.faces)
        out << "f " << face[0] + 1 << ' ' << face[1] + 1 << ' ' << face[2] + 1 << '\n';
}

Eigen::VectorXd read_edge_table(const std::string& path, const SimplicialSurface& s) {
    std::ifstream in = open_input(path);
    Eigen::VectorXd values(s.ne());
    std::vector<char> seen(s.ne(), 0);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto toks = tokens_of(line);
        if (toks.empty()) continue;
        if (toks.size() != 3) parse_fail(path, lineno, "expected 'i j value'");
        const int i = parse_int(toks[0], path, lineno);
        const int j = parse_int(toks[1], path, lineno);
        if (i >= j) parse_fail(path, lineno, "edge endpoints must satisfy i < j");
        const int e = s.edge_index(i, j);
        if (e < 0)
            parse_fail(path, lineno,
                       "mesh has no edge (" + std::to_string(i) + ", " + std::to_string(j) + ")");
        if (seen[e]) parse_fail(path, lineno, "duplicate record for edge");
        seen[e] = 1;
        values(e) = parse_number(toks[2], path, lineno);
    }
    for (int e = 0; e < s.ne(); ++e)
        if (!seen[e])
            throw ParseError(path + ": missing record for edge (" + std::to_string(s.edges[e][0]) +
                             ", " + std::to_string(s.edges[e][1]) + ")");
    return values;
}

void write_edge_table(const std::string& path, const Eigen::VectorXd& values,
                      const SimplicialSurface& s) {
    if (values.size() != s.ne()) throw DimensionMismatch("edge table has wrong length");
    std::ofstream out = open_output(path);
    for (int e = 0; e < s.ne(); ++e)
        out << s.edges[e][0] << ' ' << s.edges[e][1] << ' ' << format_double(values(e)) << '\n';
}

LoadedScene read_scene(const std::string& path) {
    std::ifstream in = open_input(path);
    SceneConfig cfg;
    cfg.path = path;
    std::string line;
    int lineno = 0;
    bool header = false, conformal_set = false;
    while (std::getline(in, line)) {
        ++lineno;
        const auto toks = tokens_of(line);
        if (toks.empty()) continue;
        if (!header) {
            if (toks.size() != 2 || toks[0] != "cws-scene" || toks[1] != "1")
                parse_fail(path, lineno, "expected header 'cws-scene 1'");
            header = true;
            continue;
        }
        const std::string& key = toks[0];
        auto need = [&](std::size_t n) {
            if (toks.size() != n + 1)
                parse_fail(path, lineno, "'" + key + "' takes " + std::to_string(n) + " arguments");
        };
        if (key == "mesh") {
            need(1);
            cfg.mesh_path = resolve(path, toks[1]);
        } else if (key == "reference-metric") {
            need(1);
            cfg.reference_metric_path = resolve(path, toks[1]);
        } else if (key == "conformal-target") {
            if (conformal_set) parse_fail(path, lineno, "conformal-target given twice");
            conformal_set = true;
            if (toks.size() == 2 && toks[1] == "from-mesh")
                cfg.conformal_source = ConformalSource::FromMesh;
            else if (toks.size() == 2 && toks[1] == "from-reference")
                cfg.conformal_source = ConformalSource::FromReference;
            else if (toks.size() == 3 && toks[1] == "file") {
                cfg.conformal_source = ConformalSource::File;
                cfg.conformal_path = resolve(path, toks[2]);
            } else
                parse_fail(path, lineno, "expected from-mesh, from-reference, or file <path>");
        } else if (key == "boundary-rows") {
            need(2);
            const int comp = parse_int(toks[1], path, lineno);
            if (toks[2] != "on" && toks[2] != "off") parse_fail(path, lineno, "expected on|off");
            cfg.boundary_rows.emplace_back(comp, toks[2] == "on");
        } else if (key == "objective") {
            need(1);
            if (toks[1] == "willmore")
                cfg.objective = Objective::Willmore;
            else if (toks[1] == "area")
                cfg.objective = Objective::Area;
            else
                parse_fail(path, lineno, "objective must be willmore or area");
        } else if (key == "tol") {
            need(1);
            cfg.options.tol = parse_number(toks[1], path, lineno);
        } else if (key == "ctol") {
            need(1);
            cfg.options.ctol = parse_number(toks[1], path, lineno);
        } else if (key == "max-iters") {
            need(1);
            cfg.options.max_iters = parse_int(toks[1], path, lineno);
        } else if (key == "output-mesh") {
            need(1);
            cfg.output_mesh = resolve(path, toks[1]);
        } else if (key == "output-report") {
            need(1);
            cfg.output_report = resolve(path, toks[1]);
        } else if (key == "output-qd") {
            need(1);
            cfg.output_qd = resolve(path, toks[1]);
        } else if (key == "point") {
            need(4);
            cfg.points.push_back({parse_int(toks[1], path, lineno),
                                  {parse_number(toks[2], path, lineno),
                                   parse_number(toks[3], path, lineno),
                                   parse_number(toks[4], path, lineno)}});
        } else if (key == "identify") {
            need(2);
            cfg.identifications.push_back(
                {parse_int(toks[1], path, lineno), parse_int(toks[2], path, lineno)});
        } else if (key == "scale") {
            need(3);
            ScaleConstraint sc;
            sc.vertex = parse_int(toks[1], path, lineno);
            sc.target = parse_number(toks[2], path, lineno);
            if (toks[3] == "vertex")
                sc.mode = ScaleMode::Vertex;
            else if (toks[3] == "link")
                sc.mode = ScaleMode::Link;
            else
                parse_fail(path, lineno, "scale mode must be vertex or link");
            cfg.scales.push_back(sc);
        } else if (key == "flux") {
            need(4);
            cfg.fluxes.push_back({parse_int(toks[1], path, lineno),
                                  {parse_number(toks[2], path, lineno),
                                   parse_number(toks[3], path, lineno),
                                   parse_number(toks[4], path, lineno)}});
        } else if (key == "area") {
            need(1);
            cfg.area_target = parse_number(toks[1], path, lineno);
        } else if (key == "volume") {
            need(1);
            cfg.volume_target = parse_number(toks[1], path, lineno);
        } else {
            parse_fail(path, lineno, "unknown scene key '" + key + "'");
        }
    }
    if (!header) throw ParseError(path + ": empty scene file");
    if (cfg.mesh_path.empty()) throw ParseError(path + ": scene has no mesh");

    LoadedScene scene;
    scene.config = cfg;
    scene.shape = read_obj(cfg.mesh_path);
    const SimplicialSurface& s = scene.shape.surface;

    if (!cfg.reference_metric_path.empty()) {
        scene.reference = read_edge_table(cfg.reference_metric_path, s);
        validate_metric(s, scene.reference);
    } else {
        scene.reference = induced_metric(scene.shape.f, s);
    }

    ConstraintSet& c = scene.constraints;
    c.objective = cfg.objective;
    c.conformal_active = true;
    switch (cfg.conformal_source) {
        case ConformalSource::FromMesh:
            c.conformal_target = extended_cross_ratio(induced_metric(scene.shape.f, s), s);
            break;
        case ConformalSource::FromReference:
            c.conformal_target = extended_cross_ratio(scene.reference, s);
            break;
        case ConformalSource::File:
            c.conformal_target.xi = read_edge_table(cfg.conformal_path, s);
            c.conformal_target.from_mesh = false;
            break;
    }
    if (!cfg.boundary_rows.empty()) {
        c.boundary_rows_on.assign(s.boundary_components, 1);
        for (const auto& [comp, on] : cfg.boundary_rows) {
            if (comp < 1 || comp > s.boundary_components)
                throw ValidationError(path + ": no boundary component " + std::to_string(comp));
            c.boundary_rows_on[comp - 1] = on ? 1 : 0;
        }
    }
    c.points = cfg.points;
    c.identifications = cfg.identifications;
    c.scales = cfg.scales;
    c.reference_metric = scene.reference;
    c.fluxes = cfg.fluxes;
    c.area_target = cfg.area_target;
    c.volume_target = cfg.volume_target;
    validate_constraints(c, s);
    return scene;
}

TubeScene read_tube_scene(const std::string& path) {
    std::ifstream in = open_input(path);
    TubeScene ts;
    std::vector<Eigen::Vector3d> samples;
    std::vector<double> thickness;
    std::string line;
    int lineno = 0;
    bool header = false;
    while (std::getline(in, line)) {
        ++lineno;
        const auto toks = tokens_of(line);
        if (toks.empty()) continue;
        if (!header) {
            if (toks.size() != 2 || toks[0] != "cws-tube" || toks[1] != "1")
                parse_fail(path, lineno, "expected header 'cws-tube 1'");
            header = true;
            continue;
        }
        if (toks[0] == "resolution" && toks.size() == 3) {
            ts.spec.circumferential = parse_int(toks[1], path, lineno);
            ts.spec.longitudinal = parse_int(toks[2], path, lineno);
        } else if (toks[0] == "output-mesh" && toks.size() == 2) {
            ts.output_mesh = resolve(path, toks[1]);
        } else if (toks[0] == "sample" && toks.size() == 5) {
            samples.emplace_back(parse_number(toks[1], path, lineno),
                                 parse_number(toks[2], path, lineno),
                                 parse_number(toks[3], path, lineno));
            thickness.push_back(parse_number(toks[4], path, lineno));
        } else {
            parse_fail(path, lineno, "unknown tube record '" + toks[0] + "'");
        }
    }
    if (!header) throw ParseError(path + ": empty tube file");
    ts.spec.centerline.resize(3, static_cast<int>(samples.size()));
    ts.spec.thickness.resize(static_cast<int>(thickness.size()));
    for (int i = 0; i < static_cast<int>(samples.size()); ++i) {
        ts.spec.centerline.col(i) = samples[i];
        ts.spec.thickness(i) = thickness[i];
    }
    return ts;
}

std::vector<std::vector<int>> read_cycles(const std::string& path, const SimplicialSurface& s) {
    std::ifstream in = open_input(path);
    std::vector<std::vector<int>> cycles;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto toks = tokens_of(line);
        if (toks.empty()) continue;
        if (toks[0] == "cycle" && toks.size() >= 3) {
            std::vector<int> cyc;
            for (std::size_t k = 1; k < toks.size(); ++k)
                cyc.push_back(parse_int(toks[k], path, lineno));
            cycles.push_back(std::move(cyc));
        } else if (toks[0] == "around" && toks.size() == 2) {
            const int v = parse_int(toks[1], path, lineno);
            if (v < 0 || v >= s.nv()) parse_fail(path, lineno, "vertex out of range");
            cycles.push_back(dual_loop_around_vertex(s, v));
        } else {
            parse_fail(path, lineno, "expected 'cycle f0 f1 ...' or 'around v'");
        }
    }
    return cycles;
}

} // namespace cws
