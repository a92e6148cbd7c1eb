#pragma once

#include <Eigen/Dense>

#include "cws/forms.hpp"
#include "cws/surface.hpp"

namespace cws {

// A discrete metric is stored as the logarithmic edge length per unoriented
// edge; exp(lambda) must satisfy the strict triangle inequality per face.
using DiscreteMetric = Eigen::VectorXd;

// Throws TriangleInequalityViolated naming the offending face. Slack is
// 1e-12 times the face perimeter.
void validate_metric(const SimplicialSurface& s, const DiscreteMetric& lambda);

DiscreteMetric induced_metric(const PrimalForm0V& f, const SimplicialSurface& s);

// lambda' = lambda + A u (validated).
DiscreteMetric conformal_rescale(const SimplicialSurface& s, const DiscreteMetric& lambda,
                                 const PrimalForm0& u);

// Conformal scale factor of lambda relative to lambda_ref, averaged from the
// per-face vertex factors. Exact recovery when the metrics are conformally
// equivalent; well-defined (but not an inverse of rescaling) otherwise.
PrimalForm0 scale_factors(const SimplicialSurface& s, const DiscreteMetric& lambda,
                          const DiscreteMetric& lambda_ref);

} // namespace cws
