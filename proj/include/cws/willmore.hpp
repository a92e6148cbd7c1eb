#pragma once

#include <Eigen/Sparse>

#include "cws/circle.hpp"
#include "cws/forms.hpp"
#include "cws/surface.hpp"

namespace cws {

struct WillmoreReport {
    DualForm2 integrand;   // W_i per vertex, zero at boundary vertices
    double total = 0;
    DualForm1V flux;       // tau, zero outside full-stencil interior edges
    int degenerate_edges = 0;
};

struct ConservationForms {
    DualForm1V tau;
    DualForm1 sigma;
    DualForm1V rho;
    DualForm1V zeta;
    EdgeForm0V edge_midpoints;
    EdgeForm0 h;          // circumsphere mean curvature per interior edge
    Eigen::VectorXd H;    // C h on interior edges
    // Vertices whose incident edges all carry a complete circle stencil; the
    // conservation identities are certified on this set.
    std::vector<char> vertex_complete;
};

WillmoreReport willmore_energy(const PrimalForm0V& f, const SimplicialSurface& s);

DualForm1V willmore_flux(const PrimalForm0V& f, const SimplicialSurface& s);
DualForm1V willmore_flux(const EdgeCircleData& circles, const PrimalForm0V& f,
                         const SimplicialSurface& s);

// Exact gradient of the energy, valid on meshes with boundary as well
// (accumulated directly from the per-edge angle variations). Equals d tau on
// closed meshes.
DualForm2V willmore_gradient(const PrimalForm0V& f, const SimplicialSurface& s);
DualForm2V willmore_gradient(const EdgeCircleData& circles, const PrimalForm0V& f,
                             const SimplicialSurface& s);

// Hessian of the energy as symmetric triplets over the 3|V| position dofs
// (vertex v occupies rows 3v..3v+2). Degenerate edges contribute nothing,
// matching the zeroed-gradient heuristic.
void willmore_hessian(const EdgeCircleData& circles, const PrimalForm0V& f,
                      const SimplicialSurface& s, std::vector<Eigen::Triplet<double>>& triplets);

// Conservation forms; throws SurfaceHasBoundary in strict mode. On bounded
// surfaces the forms are restricted to edges with a complete stencil.
ConservationForms conservation_forms(const PrimalForm0V& f, const SimplicialSurface& s,
                                     bool strict_closed = false);

} // namespace cws
