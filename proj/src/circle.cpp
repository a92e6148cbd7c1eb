#include "cws/circle.hpp"

#include <cmath>
#include <string>

#include "cws/errors.hpp"
#include "cws/quaternion.hpp"

namespace cws {

namespace {

Quat<double> unit_pure(const Eigen::Vector3d& v) {
    const double n = v.norm();
    return Quat<double>::pure(v.x() / n, v.y() / n, v.z() / n);
}

} // namespace

Eigen::Vector3d circumcircle_tangent(const Eigen::Vector3d& fi, const Eigen::Vector3d& fj,
                                     const Eigen::Vector3d& fk) {
    const Eigen::Vector3d eij = fj - fi, ejk = fk - fj, eki = fi - fk;
    const double max_edge = std::max({eij.norm(), ejk.norm(), eki.norm()});
    const double area = 0.5 * eij.cross(-eki).norm();
    if (max_edge == 0.0 || area < 1e-12 * max_edge * max_edge)
        throw DegenerateTriangle("collinear points in circumcircle_tangent");
    const Quat<double> t = unit_pure(eij) * unit_pure(ejk) * unit_pure(eki);
    return im(t);
}

EdgeCircleEntry edge_circle_entry(const Eigen::Vector3d& fi, const Eigen::Vector3d& fl,
                                  const Eigen::Vector3d& fj, const Eigen::Vector3d& fk) {
    const Eigen::Vector3d pts[4] = {fi, fl, fj, fk};
    for (int a = 0; a < 4; ++a)
        for (int b = a + 1; b < 4; ++b)
            if (pts[a] == pts[b]) throw CoincidentPoints("coincident points in edge stencil");

    const Quat<double> qa = unit_pure(fl - fi); // df_il
    const Quat<double> qb = unit_pure(fj - fl); // df_lj
    const Quat<double> qc = unit_pure(fk - fj); // df_jk
    const Quat<double> qd = unit_pure(fi - fk); // df_ki

    EdgeCircleEntry r;
    const Quat<double> Q = qa * qb * qc * qd;
    const double s = im(Q).norm(); // |Q| = 1, so |Im Q| = sin beta
    r.beta = std::atan2(s, -Q.re());
    if (s < kDegenerateSinTol) {
        r.degenerate = true;
        return r;
    }
    r.n_i = im(Q) / s;
    const Quat<double> Qj = qc * qd * qa * qb; // cyclic shift: normal at the other endpoint
    r.n_j = im(Qj) / im(Qj).norm();
    r.h = 2.0 * r.n_i.dot(pure_inverse(fj - fi));
    return r;
}

EdgeCircleData compute_edge_circles(const PrimalForm0V& f, const SimplicialSurface& s) {
    EdgeCircleData data;
    data.entries.resize(s.ne());
    for (int e = 0; e < s.ne(); ++e) {
        if (s.edge_on_boundary[e]) continue;
        const auto q = s.edge_quad(e); // (i, l, j, k)
        data.entries[e] = edge_circle_entry(f.col(q[0]), f.col(q[1]), f.col(q[2]), f.col(q[3]));
        if (data.entries[e].degenerate) ++data.degenerate_count;
    }
    return data;
}

} // namespace cws
