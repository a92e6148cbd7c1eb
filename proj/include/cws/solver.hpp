#pragma once

#include <Eigen/Sparse>

#include "cws/constraints.hpp"
#include "cws/forms.hpp"
#include "cws/surface.hpp"

namespace cws {

// Extrinsic conformal stress of a quadratic differential: mu_ij = -q_ij
// df_ij / |df_ij|^2.
DualForm1V extrinsic_stress(const Eigen::VectorXd& q, const PrimalForm0V& f,
                            const SimplicialSurface& s);

struct SolverOptions {
    double tol = 1e-6;      // L2 norm of the stationarity block
    double ctol = 1e-8;     // inf norm of the feasibility block
    int max_iters = 200;
    double dual_reg = 1e-10; // dual regularization absorbing dependent rows
    bool verbose = false;    // iteration trace on stderr
};

struct SolverState {
    PrimalForm0V f;
    Eigen::VectorXd multipliers; // stacked [conformal, scale, point, identification, area, volume]
    double stationarity_norm = 0;
    double feasibility_norm = 0;
    int iterations = 0;
    double damping = 0;
    bool converged = false;
};

// Assembled constraint structure for one solve. Multiplier layout: active
// conformal rows, scale rows, 3 per point constraint, 3 per identification,
// then optional area and volume scalars.
class ConstrainedProblem {
  public:
    ConstrainedProblem(const SimplicialSurface& s, const ConstraintSet& c);

    int num_positions() const { return 3 * surface_->nv(); }
    int num_multipliers() const {
        return num_conformal_ + num_scale_ + 3 * (num_points_ + num_idents_) + num_aux_;
    }

    // KKT residual: stationarity = grad O - d mu - nu - area/volume pullbacks;
    // feasibility stacks the constraint gaps.
    void kkt_residual(const PrimalForm0V& f, const Eigen::VectorXd& y, DualForm2V& stationarity,
                      Eigen::VectorXd& feasibility) const;

    // Symmetric indefinite KKT matrix [H_L, J^T; J, -delta I] with optional
    // Levenberg damping omega on the primal block.
    Eigen::SparseMatrix<double> assemble_jacobian(const PrimalForm0V& f, const Eigen::VectorXd& y,
                                                  double primal_damping, double dual_reg) const;

    // q = C^T y_conf: the quadratic-differential witness of the conformal
    // multipliers.
    Eigen::VectorXd multiplier_to_qd(const Eigen::VectorXd& y) const;
    // Edge function entering the stress: C^T y_conf + U^T y_scale.
    Eigen::VectorXd stress_edge_function(const Eigen::VectorXd& y) const;

    Eigen::Matrix3Xd point_multipliers(const Eigen::VectorXd& y) const; // recovered fluxes
    const std::vector<int>& conformal_row_edges() const { return conf_rows_; }
    const std::vector<int>& scale_row_vertices() const { return scale_row_vertex_; }

    const SimplicialSurface& surface() const { return *surface_; }
    const ConstraintSet& constraints() const { return *constraints_; }

  private:
    const SimplicialSurface* surface_;
    const ConstraintSet* constraints_;
    std::vector<int> conf_rows_;                // active edge rows of the extended C
    Eigen::SparseMatrix<double> C_act_;         // rows x |E|
    Eigen::SparseMatrix<double> U_;             // scale rows x |E|
    std::vector<int> scale_row_vertex_;
    Eigen::VectorXd scale_targets_;
    Eigen::VectorXd conf_targets_;
    int num_conformal_ = 0, num_scale_ = 0, num_points_ = 0, num_idents_ = 0, num_aux_ = 0;
    bool has_area_ = false, has_volume_ = false;

    friend SolverState newton_solve(const PrimalForm0V&, const SimplicialSurface&,
                                    const ConstraintSet&, const SolverOptions&);
};

// Iteration budget exhausted; carries the best iterate reached.
struct MaxIterationsReached : MaxIterations {
    SolverState best;
    MaxIterationsReached(const std::string& what, SolverState state)
        : MaxIterations(what), best(std::move(state)) {}
};

SolverState newton_solve(const PrimalForm0V& f0, const SimplicialSurface& s,
                         const ConstraintSet& c, const SolverOptions& opts = {});

} // namespace cws
