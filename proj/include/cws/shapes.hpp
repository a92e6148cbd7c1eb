#pragma once

#include "cws/forms.hpp"
#include "cws/surface.hpp"

namespace cws {

struct Shape {
    PrimalForm0V f;
    SimplicialSurface surface;
};

// Flat grid of (nx+1) x (ny+1) vertices in the z = 0 plane, unit spacing,
// quads split along the (+1,+1) diagonal.
Shape grid_mesh(int nx, int ny);

// Icosahedron subdivided `subdiv` times and projected to the unit sphere; the
// first 12 vertices are the icosahedron corners.
Shape icosphere(int subdiv);

// Latitude/longitude sphere: `segments` meridians, `rings` latitude bands,
// segments * (rings - 1) + 2 vertices.
Shape uv_sphere(int segments, int rings);

// Flat disk: center vertex plus `rings` concentric rings of `segments`
// vertices, outer radius 1.
Shape disk_mesh(int segments, int rings);

// Flat annulus between radii r0 < r1 with `rows` + 1 rings of `segments`
// vertices.
Shape annulus_mesh(int segments, int rows, double r0, double r1);

} // namespace cws
