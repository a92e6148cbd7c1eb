#pragma once

#include <Eigen/Sparse>

#include "cws/forms.hpp"
#include "cws/surface.hpp"

namespace cws {

double total_area(const PrimalForm0V& f, const SimplicialSurface& s);
DualForm2V area_gradient(const PrimalForm0V& f, const SimplicialSurface& s);
void area_hessian(const PrimalForm0V& f, const SimplicialSurface& s, double weight,
                  std::vector<Eigen::Triplet<double>>& triplets);

// Enclosed volume of a closed oriented surface; throws SurfaceHasBoundary on
// open meshes.
double enclosed_volume(const PrimalForm0V& f, const SimplicialSurface& s);
DualForm2V volume_gradient(const PrimalForm0V& f, const SimplicialSurface& s);
void volume_hessian(const PrimalForm0V& f, const SimplicialSurface& s, double weight,
                    std::vector<Eigen::Triplet<double>>& triplets);

} // namespace cws
