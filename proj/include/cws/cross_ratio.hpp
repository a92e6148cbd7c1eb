#pragma once

#include <vector>

#include <Eigen/Sparse>

#include "cws/metric.hpp"
#include "cws/surface.hpp"

namespace cws {

// Target conformal class: per interior edge the log length cross ratio, per
// boundary edge the log length half cross ratio (one row per edge of the
// extended cross-ratio operator).
struct ConformalClass {
    Eigen::VectorXd xi;   // |E| entries
    bool from_mesh = true; // false when user-supplied (possibly infeasible)
};

// The extended cross-ratio operator as a sparse |E| x |E| matrix, assembled
// facewise. Interior rows are the log length cross ratio stencil
// lambda_il - lambda_lj + lambda_jk - lambda_ki; boundary rows (for a
// boundary edge ij with face ijk) are lambda_jk - lambda_ki.
Eigen::SparseMatrix<double> extended_cross_ratio_matrix(const SimplicialSurface& s);

ConformalClass extended_cross_ratio(const DiscreteMetric& lambda, const SimplicialSurface& s);

// Interior-row application to an unoriented edge function (used for H = C h).
Eigen::VectorXd interior_cross_ratio_apply(const SimplicialSurface& s, const Eigen::VectorXd& h);

enum class ScaleMode { Vertex, Link };

// Sparse scale-constraint rows: (U (lambda - lambda_ref))_row equals the
// conformal scale factor at the row's vertex.
struct ScaleConstraintRows {
    Eigen::SparseMatrix<double> U; // rows x |E|
    std::vector<int> row_vertex;
};

ScaleConstraintRows scale_rows(const std::vector<int>& vertices, ScaleMode mode,
                               const SimplicialSurface& s);

} // namespace cws
