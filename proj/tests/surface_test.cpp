#include <doctest.h>

#include <cmath>

#include "cws/shapes.hpp"
#include "cws/surface.hpp"
#include "cws/tube.hpp"

using namespace cws;

namespace {

const std::vector<std::array<int, 3>> kTetraFaces = {
    {0, 2, 1}, {0, 1, 3}, {1, 2, 3}, {2, 0, 3}};

} // namespace

TEST_CASE("tetrahedron connectivity") {
    const SimplicialSurface s = build_surface(kTetraFaces, 4);
    CHECK(s.nv() == 4);
    CHECK(s.ne() == 6);
    CHECK(s.nf() == 4);
    CHECK(s.euler_characteristic == 2);
    CHECK(s.genus == 0);
    CHECK(s.closed());
    CHECK(s.interior_vertex_count() == 4);
    for (int e = 0; e < s.ne(); ++e) {
        CHECK(s.edges[e][0] < s.edges[e][1]);
        CHECK(s.edge_interior(e));
        CHECK(s.face_left[e] >= 0);
        CHECK(s.face_right[e] >= 0);
    }
}

TEST_CASE("edge quad stencil matches incident faces") {
    const Shape m = icosphere(1);
    const SimplicialSurface& s = m.surface;
    for (int e = 0; e < s.ne(); ++e) {
        const auto [i, l, j, k] = s.edge_quad(e);
        CHECK(i == s.edges[e][0]);
        CHECK(j == s.edges[e][1]);
        // k closes the left face (i, j, k), l the right face (j, i, l)
        const auto& fl = s.faces[s.face_left[e]];
        const auto& fr = s.faces[s.face_right[e]];
        CHECK((fl[0] == k || fl[1] == k || fl[2] == k));
        CHECK((fr[0] == l || fr[1] == l || fr[2] == l));
        CHECK(k != l);
    }
}

TEST_CASE("grid boundary classification") {
    const Shape g = grid_mesh(4, 3);
    const SimplicialSurface& s = g.surface;
    CHECK(s.nv() == 20);
    CHECK(s.boundary_components == 1);
    CHECK(s.euler_characteristic == 1);
    int boundary_vertices = 0;
    for (int v = 0; v < s.nv(); ++v)
        if (s.vertex_on_boundary[v]) {
            ++boundary_vertices;
            CHECK(s.boundary_component[v] == 1);
        }
    CHECK(boundary_vertices == 14);
    CHECK(s.interior_vertex_count() == 6);
}

TEST_CASE("annulus has two boundary components") {
    const Shape a = annulus_mesh(12, 3, 0.5, 1.0);
    CHECK(a.surface.boundary_components == 2);
    CHECK(a.surface.euler_characteristic == 0);
    CHECK(a.surface.genus == 0);
    // both labels occur
    bool seen1 = false, seen2 = false;
    for (int v = 0; v < a.surface.nv(); ++v) {
        if (a.surface.boundary_component[v] == 1) seen1 = true;
        if (a.surface.boundary_component[v] == 2) seen2 = true;
    }
    CHECK(seen1);
    CHECK(seen2);
}

TEST_CASE("vertex stars are complete") {
    const Shape m = uv_sphere(8, 5);
    const SimplicialSurface& s = m.surface;
    for (int v = 0; v < s.nv(); ++v) {
        CHECK(s.vertex_edges[v].size() >= 3);
        CHECK(s.vertex_faces[v].size() == s.vertex_edges[v].size()); // closed surface
    }
}

TEST_CASE("edge_index round trip") {
    const SimplicialSurface s = build_surface(kTetraFaces, 4);
    for (int e = 0; e < s.ne(); ++e) {
        CHECK(s.edge_index(s.edges[e][0], s.edges[e][1]) == e);
        CHECK(s.edge_index(s.edges[e][1], s.edges[e][0]) == e);
    }
    CHECK(s.edge_index(0, 0) == -1);
}

TEST_CASE("non-manifold edge rejected") {
    const std::vector<std::array<int, 3>> faces = {{0, 1, 2}, {0, 3, 1}, {0, 1, 4}};
    CHECK_THROWS_AS(build_surface(faces, 5), NonManifoldEdge);
}

TEST_CASE("inconsistent orientation rejected") {
    const std::vector<std::array<int, 3>> faces = {{0, 1, 2}, {1, 2, 3}};
    CHECK_THROWS_AS(build_surface(faces, 4), InconsistentOrientation);
}

TEST_CASE("isolated vertex rejected") {
    const std::vector<std::array<int, 3>> faces = {{0, 1, 2}};
    CHECK_THROWS_AS(build_surface(faces, 4), IsolatedVertex);
}

TEST_CASE("tube mesh is a torus") {
    TubeSpec spec;
    const int n = 24;
    spec.centerline.resize(3, n);
    for (int i = 0; i < n; ++i) {
        const double t = 2.0 * M_PI * i / n;
        spec.centerline.col(i) = Eigen::Vector3d(std::cos(t), std::sin(t), 0.0);
    }
    spec.thickness = Eigen::VectorXd::Constant(1, 0.2);
    spec.circumferential = 8;
    spec.longitudinal = 24;
    const TubeMesh tm = generate_tube(spec);
    CHECK(tm.surface.closed());
    CHECK(tm.surface.euler_characteristic == 0);
    CHECK(tm.surface.genus == 1);
}
