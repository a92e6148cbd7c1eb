#pragma once

#include <array>
#include <vector>

#include "cws/metric.hpp"

namespace cws {

// Per-face quasi-conformal distortion against a reference metric: the ratio
// of singular values of the linear map from the reference layout triangle to
// the immersed triangle. Q = 1 means conformal.
struct QcErrorReport {
    Eigen::VectorXd per_face;
    double min = 0, mean = 0, max = 0;
    double hist_lo = 1.0, hist_hi = 2.0;
    std::array<int, 64> histogram{};
};

QcErrorReport quasi_conformal_error(const PrimalForm0V& f, const DiscreteMetric& lambda_ref,
                                    const SimplicialSurface& s);

} // namespace cws
