#pragma once

#include <array>
#include <vector>

#include <Eigen/Dense>

#include "cws/errors.hpp"

namespace cws {

// Combinatorics of an oriented manifold triangle mesh, possibly with
// boundary. Edges are unoriented and canonically indexed by their sorted
// vertex pair (min, max); the halfedge min->max carries the positive
// orientation of 1-form values stored per edge.
struct SimplicialSurface {
    int vertex_count = 0;
    std::vector<std::array<int, 3>> faces;

    // Derived connectivity, filled by build_surface.
    std::vector<std::array<int, 2>> edges; // canonical (min, max)
    std::vector<int> face_left;            // face containing halfedge min->max, -1 if none
    std::vector<int> face_right;           // face containing halfedge max->min, -1 if none
    std::vector<int> opp_left;             // third vertex of face_left (the paper's k), -1 on boundary side
    std::vector<int> opp_right;            // third vertex of face_right (the paper's l), -1 on boundary side
    std::vector<std::array<int, 3>> face_edges; // for face (i,j,k): edges {ij, jk, ki}

    std::vector<char> edge_on_boundary;
    std::vector<char> vertex_on_boundary;
    std::vector<int> boundary_component; // per vertex, 0 for interior, 1..b otherwise
    std::vector<std::vector<int>> vertex_edges; // incident edges, sorted
    std::vector<std::vector<int>> vertex_faces; // incident faces, sorted

    int boundary_components = 0;
    int euler_characteristic = 0;
    int genus = 0;

    int nv() const { return vertex_count; }
    int ne() const { return static_cast<int>(edges.size()); }
    int nf() const { return static_cast<int>(faces.size()); }

    bool closed() const { return boundary_components == 0; }
    bool edge_interior(int e) const { return !edge_on_boundary[e]; }
    bool vertex_interior(int v) const { return !vertex_on_boundary[v]; }

    int edge_index(int i, int j) const; // -1 if absent

    // Orientation sign of the halfedge i->j relative to canonical storage.
    double halfedge_sign(int i, int j) const { return i < j ? 1.0 : -1.0; }

    int interior_vertex_count() const;
    int interior_edge_count() const;

    // For interior edge e = {i,j} (i<j): the stencil (i, l, j, k) with
    // k = opp_left, l = opp_right, matching edge ij between faces ijk and jil.
    std::array<int, 4> edge_quad(int e) const {
        return {edges[e][0], opp_right[e], edges[e][1], opp_left[e]};
    }
};

SimplicialSurface build_surface(const std::vector<std::array<int, 3>>& faces, int vertex_count);

} // namespace cws
