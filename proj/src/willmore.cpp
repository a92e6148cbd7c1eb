#include "cws/willmore.hpp"

#include <cmath>
#include <numbers>

#include "cws/autodiff.hpp"
#include "cws/cross_ratio.hpp"
#include "cws/errors.hpp"
#include "cws/quaternion.hpp"

namespace cws {

namespace {

// Number of interior endpoints of an edge: the multiplicity with which the
// edge's intersection angle enters the total energy.
int energy_multiplicity(const SimplicialSurface& s, int e) {
    return (s.vertex_on_boundary[s.edges[e][0]] ? 0 : 1) +
           (s.vertex_on_boundary[s.edges[e][1]] ? 0 : 1);
}

bool full_stencil(const SimplicialSurface& s, int e) {
    if (s.edge_on_boundary[e]) return false;
    const auto q = s.edge_quad(e); // (i, l, j, k)
    const int i = q[0], l = q[1], j = q[2], k = q[3];
    const std::array<std::array<int, 2>, 4> ring{{{i, l}, {l, j}, {j, k}, {k, i}}};
    for (const auto& [a, b] : ring)
        if (s.edge_on_boundary[s.edge_index(a, b)]) return false;
    return true;
}

// Circumsphere normal of edge e's stencil, evaluated at endpoint v.
const Eigen::Vector3d& normal_at(const EdgeCircleData& circles, const SimplicialSurface& s, int e,
                                 int v) {
    const auto& entry = circles.entries[e];
    return v == s.edges[e][0] ? entry.n_i : entry.n_j;
}

} // namespace

WillmoreReport willmore_energy(const PrimalForm0V& f, const SimplicialSurface& s) {
    const EdgeCircleData circles = compute_edge_circles(f, s);
    WillmoreReport rep;
    rep.integrand = DualForm2::Zero(s.nv());
    rep.degenerate_edges = circles.degenerate_count;
    for (int e = 0; e < s.ne(); ++e) {
        if (s.edge_on_boundary[e]) continue;
        for (int v : s.edges[e])
            if (!s.vertex_on_boundary[v]) rep.integrand(v) += circles.entries[e].beta;
    }
    for (int v = 0; v < s.nv(); ++v)
        if (!s.vertex_on_boundary[v]) rep.integrand(v) -= 2.0 * std::numbers::pi;
    rep.total = rep.integrand.sum();
    rep.flux = willmore_flux(circles, f, s);
    return rep;
}

DualForm1V willmore_flux(const PrimalForm0V& f, const SimplicialSurface& s) {
    return willmore_flux(compute_edge_circles(f, s), f, s);
}

DualForm1V willmore_flux(const EdgeCircleData& circles, const PrimalForm0V& f,
                         const SimplicialSurface& s) {
    DualForm1V tau = DualForm1V::Zero(3, s.ne());
    for (int e = 0; e < s.ne(); ++e) {
        if (!full_stencil(s, e)) continue;
        const auto q = s.edge_quad(e);
        const int i = q[0], l = q[1], j = q[2], k = q[3];
        const Eigen::Vector3d n_sum = normal_at(circles, s, s.edge_index(i, l), i) -
                                      normal_at(circles, s, s.edge_index(l, j), j) +
                                      normal_at(circles, s, s.edge_index(j, k), j) -
                                      normal_at(circles, s, s.edge_index(k, i), i);
        tau.col(e) = 2.0 * n_sum.cross(pure_inverse(f.col(j) - f.col(i)));
    }
    return tau;
}

DualForm2V willmore_gradient(const PrimalForm0V& f, const SimplicialSurface& s) {
    return willmore_gradient(compute_edge_circles(f, s), f, s);
}

DualForm2V willmore_gradient(const EdgeCircleData& circles, const PrimalForm0V& f,
                             const SimplicialSurface& s) {
    DualForm2V grad = DualForm2V::Zero(3, s.nv());
    for (int e = 0; e < s.ne(); ++e) {
        if (s.edge_on_boundary[e] || circles.entries[e].degenerate) continue;
        const double m = energy_multiplicity(s, e);
        if (m == 0) continue;
        const auto q = s.edge_quad(e);
        const int i = q[0], l = q[1], j = q[2], k = q[3];
        const Eigen::Vector3d& ni = circles.entries[e].n_i;
        const Eigen::Vector3d& nj = circles.entries[e].n_j;
        // d beta = -<c1, d f_il> + <c2, d f_lj> - <c3, d f_jk> + <c4, d f_ki>
        const Eigen::Vector3d c1 = pure_inverse(f.col(l) - f.col(i)).cross(ni);
        const Eigen::Vector3d c2 = pure_inverse(f.col(j) - f.col(l)).cross(nj);
        const Eigen::Vector3d c3 = pure_inverse(f.col(k) - f.col(j)).cross(nj);
        const Eigen::Vector3d c4 = pure_inverse(f.col(i) - f.col(k)).cross(ni);
        grad.col(l) -= m * c1;
        grad.col(i) += m * c1;
        grad.col(j) += m * c2;
        grad.col(l) -= m * c2;
        grad.col(k) -= m * c3;
        grad.col(j) += m * c3;
        grad.col(i) += m * c4;
        grad.col(k) -= m * c4;
    }
    return grad;
}

namespace {

using S12 = D2<12>;

S12 beta_second_order(const Eigen::Matrix<double, 3, 4>& pts) {
    // Variables: coordinates of (f_i, f_l, f_j, f_k) in stencil order.
    Quat<S12> edge[4];
    for (int t = 0; t < 4; ++t) {
        const int p = t, qn = (t + 1) % 4;
        S12 c[3];
        for (int d = 0; d < 3; ++d) {
            S12 val(pts(d, qn) - pts(d, p));
            val.g(3 * qn + d) = 1.0;
            val.g(3 * p + d) = -1.0;
            c[d] = val;
        }
        const S12 inv_len = (sqrt(c[0] * c[0] + c[1] * c[1] + c[2] * c[2])).inverse();
        edge[t] = Quat<S12>::pure(c[0] * inv_len, c[1] * inv_len, c[2] * inv_len);
    }
    const Quat<S12> Q = edge[0] * edge[1] * edge[2] * edge[3];
    return acos(-Q.w);
}

} // namespace

void willmore_hessian(const EdgeCircleData& circles, const PrimalForm0V& f,
                      const SimplicialSurface& s, std::vector<Eigen::Triplet<double>>& triplets) {
    for (int e = 0; e < s.ne(); ++e) {
        if (s.edge_on_boundary[e] || circles.entries[e].degenerate) continue;
        const double m = energy_multiplicity(s, e);
        if (m == 0) continue;
        const auto q = s.edge_quad(e);
        Eigen::Matrix<double, 3, 4> pts;
        for (int t = 0; t < 4; ++t) pts.col(t) = f.col(q[t]);
        const S12 beta = beta_second_order(pts);
        for (int a = 0; a < 4; ++a)
            for (int b = 0; b < 4; ++b)
                for (int da = 0; da < 3; ++da)
                    for (int db = 0; db < 3; ++db) {
                        const double v = m * beta.h(3 * a + da, 3 * b + db);
                        if (v != 0.0)
                            triplets.emplace_back(3 * q[a] + da, 3 * q[b] + db, v);
                    }
    }
}

ConservationForms conservation_forms(const PrimalForm0V& f, const SimplicialSurface& s,
                                     bool strict_closed) {
    if (strict_closed && !s.closed())
        throw SurfaceHasBoundary("conservation forms requested in strict mode on a bounded surface");
    const EdgeCircleData circles = compute_edge_circles(f, s);

    ConservationForms out;
    out.tau = willmore_flux(circles, f, s);
    out.edge_midpoints = average(s, f);
    out.h = EdgeForm0::Zero(s.ne());
    for (int e = 0; e < s.ne(); ++e)
        if (!s.edge_on_boundary[e]) out.h(e) = circles.entries[e].h;
    out.H = interior_cross_ratio_apply(s, out.h);

    out.sigma = DualForm1::Zero(s.ne());
    out.rho = DualForm1V::Zero(3, s.ne());
    out.zeta = DualForm1V::Zero(3, s.ne());
    out.vertex_complete.assign(s.nv(), 1);
    for (int e = 0; e < s.ne(); ++e) {
        if (!full_stencil(s, e)) {
            for (int v : s.edges[e]) out.vertex_complete[v] = 0;
            continue;
        }
        const int i = s.edges[e][0], j = s.edges[e][1];
        const Eigen::Vector3d t = out.tau.col(e);
        const Eigen::Vector3d fm = out.edge_midpoints.col(e);
        const Eigen::Vector3d df = f.col(j) - f.col(i);
        out.sigma(e) = fm.dot(t);
        out.rho.col(e) = fm.cross(t) + 0.5 * out.H(e) * df;
        out.zeta.col(e) = 0.5 * (Eigen::Vector3d(f.col(i)).cross(Eigen::Vector3d(f.col(j)).cross(t)) +
                                 Eigen::Vector3d(f.col(j)).cross(Eigen::Vector3d(f.col(i)).cross(t))) +
                          fm * fm.dot(t) + fm.cross(out.H(e) * df);
    }
    return out;
}

} // namespace cws
