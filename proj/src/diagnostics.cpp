#include "cws/diagnostics.hpp"

#include <algorithm>
#include <string>

#include "cws/errors.hpp"
#include "cws/solver.hpp"
#include "cws/willmore.hpp"

namespace cws {

ConservationReport conservation_report(const PrimalForm0V& f, const SimplicialSurface& s) {
    const ConservationForms forms = conservation_forms(f, s);
    const DualForm2V grad = willmore_gradient(f, s);

    const DualForm2V dt = d_dual1(s, forms.tau);
    const DualForm2 dsg = d_dual1(s, forms.sigma);
    const DualForm2V dr = d_dual1(s, forms.rho);
    const DualForm2V dz = d_dual1(s, forms.zeta);

    ConservationReport rep;
    rep.grad_scale = (grad.size() ? grad.cwiseAbs().maxCoeff() : 0.0) + 1.0;
    for (int i = 0; i < s.nv(); ++i) {
        if (!s.vertex_interior(i) || !forms.vertex_complete[i]) continue;
        ++rep.vertices_checked;
        const Eigen::Vector3d fi = f.col(i);
        const Eigen::Vector3d g = grad.col(i);
        rep.dtau = std::max(rep.dtau, (dt.col(i) - g).cwiseAbs().maxCoeff());
        rep.dsigma = std::max(rep.dsigma, std::abs(dsg(i) - fi.dot(g)));
        rep.drho = std::max(rep.drho, (dr.col(i) - fi.cross(g)).cwiseAbs().maxCoeff());
        const Eigen::Vector3d zrhs = fi.cross(fi.cross(g)) + fi * fi.dot(g);
        rep.dzeta = std::max(rep.dzeta, (dz.col(i) - zrhs).cwiseAbs().maxCoeff());
    }
    rep.dtau /= rep.grad_scale;
    rep.dsigma /= rep.grad_scale;
    rep.drho /= rep.grad_scale;
    rep.dzeta /= rep.grad_scale;
    return rep;
}

namespace {

int shared_edge(const SimplicialSurface& s, int fa, int fb) {
    for (int ea : s.face_edges[fa])
        for (int eb : s.face_edges[fb])
            if (ea == eb) return ea;
    return -1;
}

} // namespace

Eigen::Vector3d integrate_dual_chain(const DualForm1V& values, const SimplicialSurface& s,
                                     const std::vector<int>& cycle) {
    std::vector<int> faces = cycle;
    if (faces.size() >= 2 && faces.front() == faces.back()) faces.pop_back();
    if (faces.size() < 2) throw OpenChain("dual chain needs at least two distinct faces");
    Eigen::Vector3d total = Eigen::Vector3d::Zero();
    const int n = static_cast<int>(faces.size());
    for (int c = 0; c < n; ++c) {
        const int a = faces[c], b = faces[(c + 1) % n];
        if (a < 0 || a >= s.nf() || b < 0 || b >= s.nf())
            throw OpenChain("dual chain references a face outside the mesh");
        const int e = shared_edge(s, a, b);
        if (e < 0)
            throw OpenChain("faces " + std::to_string(a) + " and " + std::to_string(b) +
                            " share no edge");
        total += (s.face_left[e] == b ? 1.0 : -1.0) * values.col(e);
    }
    return total;
}

std::vector<Eigen::Vector3d> flux_class(const PrimalForm0V& f, const Eigen::VectorXd& q,
                                        const SimplicialSurface& s,
                                        const std::vector<std::vector<int>>& dual_cycles) {
    const DualForm1V values = willmore_flux(f, s) - extrinsic_stress(q, f, s);
    std::vector<Eigen::Vector3d> integrals;
    integrals.reserve(dual_cycles.size());
    for (const auto& cyc : dual_cycles) integrals.push_back(integrate_dual_chain(values, s, cyc));
    return integrals;
}

std::vector<int> dual_loop_around_vertex(const SimplicialSurface& s, int v) {
    if (v < 0 || v >= s.nv() || s.vertex_faces[v].empty())
        throw OpenChain("no dual loop around vertex " + std::to_string(v));
    if (!s.vertex_interior(v))
        throw OpenChain("vertex " + std::to_string(v) + " is on the boundary");
    std::vector<int> loop;
    const int start = s.vertex_faces[v][0];
    int cur = start;
    do {
        loop.push_back(cur);
        // In face (v, a, b) the walk continues across edge {v, b}, matching
        // the orientation the face induces on the link of v.
        const auto& fv = s.faces[cur];
        const int c = static_cast<int>(std::find(fv.begin(), fv.end(), v) - fv.begin());
        const int b = fv[(c + 2) % 3];
        const int e = s.edge_index(std::min(v, b), std::max(v, b));
        const int next = s.face_left[e] == cur ? s.face_right[e] : s.face_left[e];
        if (next < 0) throw OpenChain("vertex star of " + std::to_string(v) + " is open");
        cur = next;
    } while (cur != start);
    return loop;
}

} // namespace cws
