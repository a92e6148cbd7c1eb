#pragma once

#include <Eigen/Dense>

#include "cws/surface.hpp"

namespace cws {

// Discrete differential forms are stored as plain Eigen arrays indexed by
// vertex or canonical edge id. 1-form values (primal or dual) are stored for
// the canonical min->max orientation; the reversed halfedge carries the
// negated value. Edge-supported 0-/2-forms carry no orientation sign.
using PrimalForm0 = Eigen::VectorXd;    // per vertex
using PrimalForm0V = Eigen::Matrix3Xd;  // per vertex, R^3 payload
using PrimalForm1 = Eigen::VectorXd;    // per edge, antisymmetric convention
using DualForm1 = Eigen::VectorXd;      // per dual edge (indexed by primal edge)
using DualForm1V = Eigen::Matrix3Xd;
using DualForm2 = Eigen::VectorXd;      // per dual cell (indexed by vertex)
using DualForm2V = Eigen::Matrix3Xd;
using EdgeForm0 = Eigen::VectorXd;      // per edge, unoriented
using EdgeForm0V = Eigen::Matrix3Xd;
using EdgeForm2 = Eigen::VectorXd;

inline PrimalForm1 d_primal0(const SimplicialSurface& s, const PrimalForm0& phi) {
    PrimalForm1 d(s.ne());
    for (int e = 0; e < s.ne(); ++e) d(e) = phi(s.edges[e][1]) - phi(s.edges[e][0]);
    return d;
}

// (d tau)_i = sum over halfedges ij leaving i of tau_ij.
inline DualForm2 d_dual1(const SimplicialSurface& s, const DualForm1& tau) {
    DualForm2 d = DualForm2::Zero(s.nv());
    for (int e = 0; e < s.ne(); ++e) {
        d(s.edges[e][0]) += tau(e);
        d(s.edges[e][1]) -= tau(e);
    }
    return d;
}

inline DualForm2V d_dual1(const SimplicialSurface& s, const DualForm1V& tau) {
    DualForm2V d = DualForm2V::Zero(3, s.nv());
    for (int e = 0; e < s.ne(); ++e) {
        d.col(s.edges[e][0]) += tau.col(e);
        d.col(s.edges[e][1]) -= tau.col(e);
    }
    return d;
}

inline EdgeForm0 average(const SimplicialSurface& s, const PrimalForm0& u) {
    EdgeForm0 a(s.ne());
    for (int e = 0; e < s.ne(); ++e) a(e) = 0.5 * (u(s.edges[e][0]) + u(s.edges[e][1]));
    return a;
}

inline EdgeForm0V average(const SimplicialSurface& s, const PrimalForm0V& u) {
    EdgeForm0V a(3, s.ne());
    for (int e = 0; e < s.ne(); ++e) a.col(e) = 0.5 * (u.col(s.edges[e][0]) + u.col(s.edges[e][1]));
    return a;
}

inline DualForm2 average_adjoint(const SimplicialSurface& s, const EdgeForm2& sigma) {
    DualForm2 a = DualForm2::Zero(s.nv());
    for (int e = 0; e < s.ne(); ++e) {
        a(s.edges[e][0]) += 0.5 * sigma(e);
        a(s.edges[e][1]) += 0.5 * sigma(e);
    }
    return a;
}

inline DualForm2V average_adjoint(const SimplicialSurface& s, const EdgeForm0V& sigma) {
    DualForm2V a = DualForm2V::Zero(3, s.nv());
    for (int e = 0; e < s.ne(); ++e) {
        a.col(s.edges[e][0]) += 0.5 * sigma.col(e);
        a.col(s.edges[e][1]) += 0.5 * sigma.col(e);
    }
    return a;
}

// Discrete wedge of a primal and a dual 1-form; the two orientation signs
// cancel, so the result lives on unoriented edges.
inline EdgeForm2 wedge(const PrimalForm1& alpha, const DualForm1& beta) {
    return alpha.cwiseProduct(beta);
}

inline EdgeForm2 wedge_dot(const Eigen::Matrix3Xd& alpha, const Eigen::Matrix3Xd& beta) {
    return alpha.cwiseProduct(beta).colwise().sum().transpose();
}

inline Eigen::Matrix3Xd wedge_cross(const Eigen::Matrix3Xd& alpha, const Eigen::Matrix3Xd& beta) {
    Eigen::Matrix3Xd r(3, alpha.cols());
    for (int e = 0; e < alpha.cols(); ++e)
        r.col(e) = Eigen::Vector3d(alpha.col(e)).cross(Eigen::Vector3d(beta.col(e)));
    return r;
}

} // namespace cws
