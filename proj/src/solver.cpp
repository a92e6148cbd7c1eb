#include "cws/solver.hpp"

#include <cmath>
#include <cstdio>
#include <set>
#include <string>

#include "cws/errors.hpp"
#include "cws/measures.hpp"
#include "cws/metric.hpp"
#include "cws/willmore.hpp"

namespace cws {

DualForm1V extrinsic_stress(const Eigen::VectorXd& q, const PrimalForm0V& f,
                            const SimplicialSurface& s) {
    if (q.size() != s.ne() || f.cols() != s.nv())
        throw DimensionMismatch("extrinsic stress: q or f has the wrong size");
    DualForm1V mu(3, s.ne());
    for (int e = 0; e < s.ne(); ++e) {
        const Eigen::Vector3d d = f.col(s.edges[e][1]) - f.col(s.edges[e][0]);
        const double n2 = d.squaredNorm();
        if (n2 == 0.0) throw ZeroLengthEdge("edge " + std::to_string(e) + " has zero length");
        mu.col(e) = -q(e) / n2 * d;
    }
    return mu;
}

ConstrainedProblem::ConstrainedProblem(const SimplicialSurface& s, const ConstraintSet& c)
    : surface_(&s), constraints_(&c) {
    if (c.conformal_active) {
        if (c.conformal_target.xi.size() != s.ne())
            throw DimensionMismatch("conformal target has " +
                                    std::to_string(c.conformal_target.xi.size()) +
                                    " entries, mesh has " + std::to_string(s.ne()) + " edges");
        for (int e = 0; e < s.ne(); ++e) {
            if (s.edge_on_boundary[e] && !c.boundary_rows_on.empty()) {
                const int comp = s.boundary_component[s.edges[e][0]];
                if (comp < 1 || comp > static_cast<int>(c.boundary_rows_on.size()) ||
                    !c.boundary_rows_on[comp - 1])
                    continue;
            }
            conf_rows_.push_back(e);
        }
        const Eigen::SparseMatrix<double, Eigen::RowMajor> C(extended_cross_ratio_matrix(s));
        std::vector<Eigen::Triplet<double>> trips;
        conf_targets_.resize(static_cast<int>(conf_rows_.size()));
        for (int r = 0; r < static_cast<int>(conf_rows_.size()); ++r) {
            for (Eigen::SparseMatrix<double, Eigen::RowMajor>::InnerIterator it(C, conf_rows_[r]);
                 it; ++it)
                trips.emplace_back(r, static_cast<int>(it.col()), it.value());
            conf_targets_(r) = c.conformal_target.xi(conf_rows_[r]);
        }
        C_act_.resize(static_cast<int>(conf_rows_.size()), s.ne());
        C_act_.setFromTriplets(trips.begin(), trips.end());
    }
    num_conformal_ = static_cast<int>(conf_rows_.size());

    if (!c.scales.empty()) {
        if (c.reference_metric.size() != s.ne())
            throw DimensionMismatch("scale constraints need a reference metric over all edges");
        std::vector<Eigen::Triplet<double>> trips;
        std::vector<double> targets;
        for (const auto& sc : c.scales) {
            const ScaleConstraintRows rows = scale_rows({sc.vertex}, sc.mode, s);
            const int base = static_cast<int>(scale_row_vertex_.size());
            for (int col = 0; col < rows.U.outerSize(); ++col)
                for (Eigen::SparseMatrix<double>::InnerIterator it(rows.U, col); it; ++it)
                    trips.emplace_back(base + static_cast<int>(it.row()), col, it.value());
            for (int v : rows.row_vertex) {
                scale_row_vertex_.push_back(v);
                targets.push_back(sc.target);
            }
        }
        std::set<int> seen;
        for (int v : scale_row_vertex_)
            if (!seen.insert(v).second)
                throw DuplicateRow("scale constraints overlap at vertex " + std::to_string(v));
        U_.resize(static_cast<int>(scale_row_vertex_.size()), s.ne());
        U_.setFromTriplets(trips.begin(), trips.end());
        scale_targets_ = Eigen::Map<const Eigen::VectorXd>(targets.data(),
                                                           static_cast<int>(targets.size()));
    }
    num_scale_ = static_cast<int>(scale_row_vertex_.size());
    num_points_ = static_cast<int>(c.points.size());
    num_idents_ = static_cast<int>(c.identifications.size());
    has_area_ = c.area_target.has_value();
    has_volume_ = c.volume_target.has_value();
    num_aux_ = (has_area_ ? 1 : 0) + (has_volume_ ? 1 : 0);
}

Eigen::VectorXd ConstrainedProblem::multiplier_to_qd(const Eigen::VectorXd& y) const {
    Eigen::VectorXd q = Eigen::VectorXd::Zero(surface_->ne());
    if (num_conformal_ > 0) q = C_act_.transpose() * y.head(num_conformal_);
    return q;
}

Eigen::VectorXd ConstrainedProblem::stress_edge_function(const Eigen::VectorXd& y) const {
    Eigen::VectorXd q = multiplier_to_qd(y);
    if (num_scale_ > 0) q += U_.transpose() * y.segment(num_conformal_, num_scale_);
    return q;
}

Eigen::Matrix3Xd ConstrainedProblem::point_multipliers(const Eigen::VectorXd& y) const {
    Eigen::Matrix3Xd nu(3, num_points_);
    for (int p = 0; p < num_points_; ++p)
        nu.col(p) = y.segment(num_conformal_ + num_scale_ + 3 * p, 3);
    return nu;
}

namespace {

DualForm2V objective_gradient(Objective obj, const PrimalForm0V& f, const SimplicialSurface& s) {
    return obj == Objective::Willmore ? willmore_gradient(f, s) : area_gradient(f, s);
}

} // namespace

void ConstrainedProblem::kkt_residual(const PrimalForm0V& f, const Eigen::VectorXd& y,
                                      DualForm2V& stationarity, Eigen::VectorXd& feasibility) const {
    const SimplicialSurface& s = *surface_;
    const ConstraintSet& c = *constraints_;
    if (f.cols() != s.nv()) throw DimensionMismatch("immersion has the wrong vertex count");
    if (y.size() != num_multipliers()) throw DimensionMismatch("multiplier vector has wrong size");

    stationarity = objective_gradient(c.objective, f, s);

    // d mu for mu = extrinsic_stress(q, f) equals the position gradient of
    // sum_e q_e log |df_e|, subtracted as the constraint pullback.
    const Eigen::VectorXd q = stress_edge_function(y);
    for (int e = 0; e < s.ne(); ++e) {
        if (q(e) == 0.0) continue;
        const int i = s.edges[e][0], j = s.edges[e][1];
        const Eigen::Vector3d d = f.col(j) - f.col(i);
        const double n2 = d.squaredNorm();
        if (n2 == 0.0) throw ZeroLengthEdge("edge " + std::to_string(e) + " has zero length");
        stationarity.col(j) -= q(e) / n2 * d;
        stationarity.col(i) += q(e) / n2 * d;
    }
    for (int p = 0; p < num_points_; ++p)
        stationarity.col(c.points[p].vertex) -= y.segment(num_conformal_ + num_scale_ + 3 * p, 3);
    const int ident_base = num_conformal_ + num_scale_ + 3 * num_points_;
    for (int p = 0; p < num_idents_; ++p) {
        const Eigen::Vector3d yp = y.segment(ident_base + 3 * p, 3);
        stationarity.col(c.identifications[p][0]) -= yp;
        stationarity.col(c.identifications[p][1]) += yp;
    }
    for (const auto& fc : c.fluxes) stationarity.col(fc.vertex) -= fc.nu;

    const int aux_base = ident_base + 3 * num_idents_;
    int aux = aux_base;
    if (has_area_) stationarity -= y(aux++) * area_gradient(f, s);
    if (has_volume_) stationarity -= y(aux) * volume_gradient(f, s);

    feasibility.resize(num_multipliers());
    DiscreteMetric lambda;
    if (num_conformal_ > 0 || num_scale_ > 0) lambda = induced_metric(f, s);
    if (num_conformal_ > 0) feasibility.head(num_conformal_) = C_act_ * lambda - conf_targets_;
    if (num_scale_ > 0)
        feasibility.segment(num_conformal_, num_scale_) =
            U_ * (lambda - c.reference_metric) - scale_targets_;
    for (int p = 0; p < num_points_; ++p)
        feasibility.segment(num_conformal_ + num_scale_ + 3 * p, 3) =
            f.col(c.points[p].vertex) - c.points[p].target;
    for (int p = 0; p < num_idents_; ++p)
        feasibility.segment(ident_base + 3 * p, 3) =
            f.col(c.identifications[p][0]) - f.col(c.identifications[p][1]);
    aux = aux_base;
    if (has_area_) feasibility(aux++) = total_area(f, s) - *c.area_target;
    if (has_volume_) feasibility(aux) = enclosed_volume(f, s) - *c.volume_target;
}

Eigen::SparseMatrix<double> ConstrainedProblem::assemble_jacobian(const PrimalForm0V& f,
                                                                  const Eigen::VectorXd& y,
                                                                  double primal_damping,
                                                                  double dual_reg) const {
    const SimplicialSurface& s = *surface_;
    const ConstraintSet& c = *constraints_;
    const int np = num_positions();
    const int m = num_multipliers();
    std::vector<Eigen::Triplet<double>> trips;

    if (c.objective == Objective::Willmore) {
        const EdgeCircleData circles = compute_edge_circles(f, s);
        willmore_hessian(circles, f, s, trips);
    } else {
        area_hessian(f, s, 1.0, trips);
    }

    // Constraint curvature: -sum_e q_e Hess log |df_e|, with the 3x3 block
    // B = I/|d|^2 - 2 d d^T/|d|^4 scattered as (j,j)+B, (i,i)+B, (i,j)-B.
    const Eigen::VectorXd q = stress_edge_function(y);
    for (int e = 0; e < s.ne(); ++e) {
        if (q(e) == 0.0) continue;
        const int i = s.edges[e][0], j = s.edges[e][1];
        const Eigen::Vector3d d = f.col(j) - f.col(i);
        const double n2 = d.squaredNorm();
        if (n2 == 0.0) throw SingularConfiguration("zero-length edge during assembly");
        const Eigen::Matrix3d B =
            Eigen::Matrix3d::Identity() / n2 - 2.0 / (n2 * n2) * (d * d.transpose());
        for (int a = 0; a < 3; ++a)
            for (int b = 0; b < 3; ++b) {
                const double v = -q(e) * B(a, b);
                if (v == 0.0) continue;
                trips.emplace_back(3 * j + a, 3 * j + b, v);
                trips.emplace_back(3 * i + a, 3 * i + b, v);
                trips.emplace_back(3 * i + a, 3 * j + b, -v);
                trips.emplace_back(3 * j + a, 3 * i + b, -v);
            }
    }

    const int aux_base = num_conformal_ + num_scale_ + 3 * (num_points_ + num_idents_);
    int aux = aux_base;
    if (has_area_) area_hessian(f, s, -y(aux++), trips);
    if (has_volume_) volume_hessian(f, s, -y(aux), trips);

    if (primal_damping > 0.0)
        for (int r = 0; r < np; ++r) trips.emplace_back(r, r, primal_damping);

    // Constraint Jacobian rows and their transposes.
    auto add_metric_rows = [&](const Eigen::SparseMatrix<double>& M, int row_offset) {
        for (int e = 0; e < M.outerSize(); ++e) {
            const int i = s.edges[e][0], j = s.edges[e][1];
            const Eigen::Vector3d d = f.col(j) - f.col(i);
            const double n2 = d.squaredNorm();
            for (Eigen::SparseMatrix<double>::InnerIterator it(M, e); it; ++it) {
                const int r = row_offset + static_cast<int>(it.row());
                for (int dd = 0; dd < 3; ++dd) {
                    const double v = it.value() * d(dd) / n2;
                    if (v == 0.0) continue;
                    trips.emplace_back(r, 3 * j + dd, v);
                    trips.emplace_back(3 * j + dd, r, v);
                    trips.emplace_back(r, 3 * i + dd, -v);
                    trips.emplace_back(3 * i + dd, r, -v);
                }
            }
        }
    };
    if (num_conformal_ > 0) add_metric_rows(C_act_, np);
    if (num_scale_ > 0) add_metric_rows(U_, np + num_conformal_);

    for (int p = 0; p < num_points_; ++p) {
        const int v = c.points[p].vertex;
        for (int dd = 0; dd < 3; ++dd) {
            const int r = np + num_conformal_ + num_scale_ + 3 * p + dd;
            trips.emplace_back(r, 3 * v + dd, 1.0);
            trips.emplace_back(3 * v + dd, r, 1.0);
        }
    }

    for (int p = 0; p < num_idents_; ++p) {
        const int v = c.identifications[p][0], w = c.identifications[p][1];
        for (int dd = 0; dd < 3; ++dd) {
            const int r = np + num_conformal_ + num_scale_ + 3 * (num_points_ + p) + dd;
            trips.emplace_back(r, 3 * v + dd, 1.0);
            trips.emplace_back(3 * v + dd, r, 1.0);
            trips.emplace_back(r, 3 * w + dd, -1.0);
            trips.emplace_back(3 * w + dd, r, -1.0);
        }
    }

    auto add_dense_row = [&](const DualForm2V& g, int r) {
        for (int v = 0; v < s.nv(); ++v)
            for (int dd = 0; dd < 3; ++dd)
                if (g(dd, v) != 0.0) {
                    trips.emplace_back(r, 3 * v + dd, g(dd, v));
                    trips.emplace_back(3 * v + dd, r, g(dd, v));
                }
    };
    aux = aux_base;
    if (has_area_) add_dense_row(area_gradient(f, s), np + aux++);
    if (has_volume_) add_dense_row(volume_gradient(f, s), np + aux);

    // Dual regularization absorbs the rank deficiency of the conformal rows.
    for (int r = 0; r < m; ++r) trips.emplace_back(np + r, np + r, -dual_reg);

    Eigen::SparseMatrix<double> K(np + m, np + m);
    K.setFromTriplets(trips.begin(), trips.end());
    return K;
}

SolverState newton_solve(const PrimalForm0V& f0, const SimplicialSurface& s,
                         const ConstraintSet& c, const SolverOptions& opts) {
    validate_constraints(c, s);
    const ConstrainedProblem prob(s, c);
    const int np = prob.num_positions();
    const int m = prob.num_multipliers();

    SolverState st;
    st.f = f0;
    st.multipliers = Eigen::VectorXd::Zero(m);

    DualForm2V stat;
    Eigen::VectorXd feas;
    auto eval = [&](const PrimalForm0V& f, const Eigen::VectorXd& y, DualForm2V& st_out,
                    Eigen::VectorXd& fe_out) {
        prob.kkt_residual(f, y, st_out, fe_out);
        return std::sqrt(st_out.squaredNorm() + fe_out.squaredNorm());
    };
    double merit = eval(st.f, st.multipliers, stat, feas);
    st.stationarity_norm = stat.norm();
    st.feasibility_norm = m > 0 ? feas.lpNorm<Eigen::Infinity>() : 0.0;

    while (true) {
        if (st.stationarity_norm < opts.tol && st.feasibility_norm < opts.ctol) {
            st.converged = true;
            return st;
        }
        if (st.iterations >= opts.max_iters)
            throw MaxIterationsReached("no convergence after " + std::to_string(st.iterations) +
                                           " iterations (stationarity " +
                                           std::to_string(st.stationarity_norm) + ", feasibility " +
                                           std::to_string(st.feasibility_norm) + ")",
                                       st);

        Eigen::VectorXd rhs(np + m);
        rhs.head(np) = -Eigen::Map<const Eigen::VectorXd>(stat.data(), np);
        rhs.tail(m) = -feas;

        // Damping persists across iterations: raised while steps are rejected
        // or microscopic, lowered again after clean full steps.
        double damping = st.damping;
        bool stepped = false;
        while (!stepped) {
            const Eigen::SparseMatrix<double> K =
                prob.assemble_jacobian(st.f, st.multipliers, damping, opts.dual_reg);
            Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
            lu.compute(K);
            bool solve_ok = lu.info() == Eigen::Success;
            Eigen::VectorXd delta;
            if (solve_ok) {
                delta = lu.solve(rhs);
                Eigen::VectorXd resid = rhs - K * delta;
                delta += lu.solve(resid); // one round of iterative refinement
                resid = rhs - K * delta;
                double norm_k = 0.0;
                for (int kk = 0; kk < K.nonZeros(); ++kk)
                    norm_k = std::max(norm_k, std::abs(K.valuePtr()[kk]));
                const double scale = std::max(1.0, rhs.norm() + norm_k * delta.norm());
                solve_ok = delta.allFinite() && resid.norm() <= 1e-10 * scale;
            }
            double accepted_alpha = 0.0;
            if (solve_ok) {
                const Eigen::Map<const Eigen::Matrix3Xd> df(delta.data(), 3, s.nv());
                const Eigen::VectorXd dy = -delta.tail(m); // sign flip of the symmetrized block
                double alpha = 1.0;
                for (int ls = 0; ls < 30 && !stepped; ++ls, alpha *= 0.5) {
                    const PrimalForm0V f_try = st.f + alpha * df;
                    const Eigen::VectorXd y_try = st.multipliers + alpha * dy;
                    DualForm2V stat_try;
                    Eigen::VectorXd feas_try;
                    double merit_try;
                    try {
                        merit_try = eval(f_try, y_try, stat_try, feas_try);
                    } catch (const Error&) {
                        continue; // stepped into a degenerate configuration
                    }
                    if (merit_try <= (1.0 - 1e-4 * alpha) * merit) {
                        st.f = f_try;
                        st.multipliers = y_try;
                        stat = stat_try;
                        feas = feas_try;
                        merit = merit_try;
                        stepped = true;
                        accepted_alpha = alpha;
                    }
                }
            }
            if (!stepped) {
                damping = damping == 0.0 ? 1e-8 : damping * 10.0;
                if (damping > 1e6) {
                    if (solve_ok)
                        throw LineSearchFailure("line search stalled at maximal damping");
                    throw SingularKKT("factorization breakdown persists at maximal damping");
                }
            } else if (accepted_alpha < 1e-3) {
                damping = std::max(damping * 10.0, 1e-8);
                damping = std::min(damping, 1e6);
            } else if (accepted_alpha == 1.0 && damping > 0.0) {
                damping *= 0.1;
                if (damping < 1e-12) damping = 0.0;
            }
            st.damping = damping;
        }
        ++st.iterations;
        st.stationarity_norm = stat.norm();
        st.feasibility_norm = m > 0 ? feas.lpNorm<Eigen::Infinity>() : 0.0;
        if (opts.verbose)
            std::fprintf(stderr, "iter %d stat %.3e feas %.3e merit %.3e damping %.1e\n",
                         st.iterations, st.stationarity_norm, st.feasibility_norm, merit,
                         st.damping);
    }
}

} // namespace cws
