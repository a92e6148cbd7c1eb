#pragma once

#include <vector>

#include "cws/forms.hpp"
#include "cws/surface.hpp"

namespace cws {

// Max residuals of the four conservation identities, relative to
// |grad W|_inf + 1, over interior vertices with complete circle stencils.
struct ConservationReport {
    double dtau = 0;   // d tau - grad W
    double dsigma = 0; // d sigma - <f, grad W>
    double drho = 0;   // d rho - f x grad W
    double dzeta = 0;  // d zeta - f x (f x grad W) - f <f, grad W>
    double grad_scale = 1;
    int vertices_checked = 0;
};

ConservationReport conservation_report(const PrimalForm0V& f, const SimplicialSurface& s);

// A dual 1-chain is an ordered list of faces; consecutive faces (cyclically)
// must share an edge. Crossing from face A into face B over edge e picks up
// +value if B lies on the left of the canonical halfedge, -value otherwise.
Eigen::Vector3d integrate_dual_chain(const DualForm1V& values, const SimplicialSurface& s,
                                     const std::vector<int>& cycle);

// Per-cycle integrals of tau - mu, the translational flux cohomology class of
// a solution with quadratic differential q.
std::vector<Eigen::Vector3d> flux_class(const PrimalForm0V& f, const Eigen::VectorXd& q,
                                        const SimplicialSurface& s,
                                        const std::vector<std::vector<int>>& dual_cycles);

// The oriented dual loop around an interior vertex (faces in the order the
// face orientations induce); throws OpenChain at boundary vertices.
std::vector<int> dual_loop_around_vertex(const SimplicialSurface& s, int v);

} // namespace cws
