#pragma once

#include <vector>

#include <Eigen/Dense>

#include "cws/forms.hpp"
#include "cws/surface.hpp"

namespace cws {

// Heuristic cutoff on |sin beta| below which an edge circle configuration is
// treated as degenerate: normals are zeroed and the edge drops out of the
// energy gradient.
inline constexpr double kDegenerateSinTol = 1e-6;

struct EdgeCircleEntry {
    double beta = 0;                              // circumcircle intersection angle in [0, pi]
    Eigen::Vector3d n_i = Eigen::Vector3d::Zero(); // circumsphere normal at the lower-index endpoint
    Eigen::Vector3d n_j = Eigen::Vector3d::Zero(); // circumsphere normal at the upper-index endpoint
    double h = 0;                                  // mean curvature of the edge circumsphere
    bool degenerate = false;
};

struct EdgeCircleData {
    std::vector<EdgeCircleEntry> entries; // per edge; boundary edges hold inert zero entries
    int degenerate_count = 0;
};

// Tangent of the circumcircle of (f_i, f_j, f_k) at f_i, oriented by the
// vertex order: the quaternionic triple product of the normalized edges.
Eigen::Vector3d circumcircle_tangent(const Eigen::Vector3d& fi, const Eigen::Vector3d& fj,
                                     const Eigen::Vector3d& fk);

// Circle data for the 4-point stencil (i, l, j, k) around an edge ij, with l
// and k the opposite vertices of the two incident faces.
EdgeCircleEntry edge_circle_entry(const Eigen::Vector3d& fi, const Eigen::Vector3d& fl,
                                  const Eigen::Vector3d& fj, const Eigen::Vector3d& fk);

// Circle data over all interior edges of the surface.
EdgeCircleData compute_edge_circles(const PrimalForm0V& f, const SimplicialSurface& s);

} // namespace cws
