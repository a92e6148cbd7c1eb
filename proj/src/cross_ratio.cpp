#include "cws/cross_ratio.hpp"

#include <algorithm>
#include <set>
#include <string>

#include "cws/errors.hpp"

namespace cws {

Eigen::SparseMatrix<double> extended_cross_ratio_matrix(const SimplicialSurface& s) {
    std::vector<Eigen::Triplet<double>> trips;
    trips.reserve(s.nf() * 6);
    for (int fi = 0; fi < s.nf(); ++fi) {
        const auto& fe = s.face_edges[fi]; // (ij, jk, ki) for face (i,j,k)
        for (int c = 0; c < 3; ++c) {
            trips.emplace_back(fe[c], fe[(c + 1) % 3], 1.0);
            trips.emplace_back(fe[c], fe[(c + 2) % 3], -1.0);
        }
    }
    Eigen::SparseMatrix<double> C(s.ne(), s.ne());
    C.setFromTriplets(trips.begin(), trips.end());
    return C;
}

ConformalClass extended_cross_ratio(const DiscreteMetric& lambda, const SimplicialSurface& s) {
    ConformalClass c;
    c.xi = extended_cross_ratio_matrix(s) * lambda;
    c.from_mesh = true;
    return c;
}

Eigen::VectorXd interior_cross_ratio_apply(const SimplicialSurface& s, const Eigen::VectorXd& h) {
    Eigen::VectorXd out = Eigen::VectorXd::Zero(s.ne());
    for (int e = 0; e < s.ne(); ++e) {
        if (s.edge_on_boundary[e]) continue;
        const auto q = s.edge_quad(e); // (i, l, j, k)
        const int i = q[0], l = q[1], j = q[2], k = q[3];
        out(e) = h(s.edge_index(i, l)) - h(s.edge_index(l, j)) + h(s.edge_index(j, k)) -
                 h(s.edge_index(k, i));
    }
    return out;
}

ScaleConstraintRows scale_rows(const std::vector<int>& vertices, ScaleMode mode,
                               const SimplicialSurface& s) {
    std::vector<int> rows;
    if (mode == ScaleMode::Vertex) {
        rows = vertices;
    } else {
        // Link mode: one row per neighbor of each listed vertex, central
        // vertices left out.
        std::set<int> centers(vertices.begin(), vertices.end());
        std::set<int> link;
        for (int v : vertices)
            for (int e : s.vertex_edges[v]) {
                const int w = s.edges[e][0] == v ? s.edges[e][1] : s.edges[e][0];
                if (!centers.count(w)) link.insert(w);
            }
        rows.assign(link.begin(), link.end());
    }
    {
        std::set<int> seen;
        for (int v : rows)
            if (!seen.insert(v).second)
                throw DuplicateRow("duplicate scale-constraint row for vertex " + std::to_string(v));
    }

    std::vector<Eigen::Triplet<double>> trips;
    for (int r = 0; r < static_cast<int>(rows.size()); ++r) {
        const int v = rows[r];
        const double inv_n = 1.0 / static_cast<double>(s.vertex_faces[v].size());
        for (int fi : s.vertex_faces[v]) {
            const auto& fv = s.faces[fi];
            const auto& fe = s.face_edges[fi];
            const int c = static_cast<int>(std::find(fv.begin(), fv.end(), v) - fv.begin());
            // Facewise factor at vertex c: +edge(c) - edge(c+1) + edge(c+2).
            trips.emplace_back(r, fe[c], inv_n);
            trips.emplace_back(r, fe[(c + 1) % 3], -inv_n);
            trips.emplace_back(r, fe[(c + 2) % 3], inv_n);
        }
    }
    ScaleConstraintRows out;
    out.U.resize(static_cast<int>(rows.size()), s.ne());
    out.U.setFromTriplets(trips.begin(), trips.end());
    out.row_vertex = rows;
    return out;
}

} // namespace cws
