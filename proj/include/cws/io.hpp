#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cws/constraints.hpp"
#include "cws/shapes.hpp"
#include "cws/solver.hpp"
#include "cws/tube.hpp"

namespace cws {

// Shortest decimal representation that round-trips the double exactly.
std::string format_double(double v);

Shape read_obj(const std::string& path);
void write_obj(const std::string& path, const PrimalForm0V& f, const SimplicialSurface& s);

// Edge tables carry one "i j value" record per mesh edge, i < j canonical.
// They store reference metrics (log lengths), conformal targets, and
// quadratic differentials.
Eigen::VectorXd read_edge_table(const std::string& path, const SimplicialSurface& s);
void write_edge_table(const std::string& path, const Eigen::VectorXd& values,
                      const SimplicialSurface& s);

enum class ConformalSource { FromMesh, FromReference, File };

struct SceneConfig {
    std::string path; // scene file itself
    std::string mesh_path;
    std::string reference_metric_path; // empty: induced from the mesh
    ConformalSource conformal_source = ConformalSource::FromMesh;
    std::string conformal_path;
    std::vector<std::pair<int, bool>> boundary_rows; // component label, on/off
    Objective objective = Objective::Willmore;
    SolverOptions options;
    std::string output_mesh, output_report, output_qd;
    std::vector<PointConstraint> points;
    std::vector<std::array<int, 2>> identifications;
    std::vector<ScaleConstraint> scales;
    std::vector<FluxConstraint> fluxes;
    std::optional<double> area_target, volume_target;
};

struct LoadedScene {
    SceneConfig config;
    Shape shape;
    DiscreteMetric reference; // resolved reference metric
    ConstraintSet constraints;
};

// Parses the scene file, loads the mesh and sidecars, assembles the
// constraint set, and validates it (including the flux balancing pre-check).
LoadedScene read_scene(const std::string& path);

// Tube spec file: "cws-tube 1" header, "resolution m n", optional
// "output-mesh path", then one "sample x y z a" per centerline sample.
struct TubeScene {
    TubeSpec spec;
    std::string output_mesh;
};

TubeScene read_tube_scene(const std::string& path);

// Cycle file for flux reports: "cycle f0 f1 ..." rows of dual chains plus
// "around v" rows expanding to the dual loop of vertex v.
std::vector<std::vector<int>> read_cycles(const std::string& path, const SimplicialSurface& s);

int run_cli(int argc, const char* const* argv);

} // namespace cws
