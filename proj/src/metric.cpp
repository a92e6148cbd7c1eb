#include "cws/metric.hpp"

#include <cmath>
#include <string>

#include "cws/errors.hpp"

namespace cws {

void validate_metric(const SimplicialSurface& s, const DiscreteMetric& lambda) {
    for (int fi = 0; fi < s.nf(); ++fi) {
        const auto& fe = s.face_edges[fi];
        const double a = std::exp(lambda(fe[0]));
        const double b = std::exp(lambda(fe[1]));
        const double c = std::exp(lambda(fe[2]));
        const double slack = 1e-12 * (a + b + c);
        if (a + b <= c + slack || b + c <= a + slack || c + a <= b + slack)
            throw TriangleInequalityViolated("triangle inequality fails on face " + std::to_string(fi));
    }
}

DiscreteMetric induced_metric(const PrimalForm0V& f, const SimplicialSurface& s) {
    DiscreteMetric lambda(s.ne());
    for (int e = 0; e < s.ne(); ++e) {
        const double len = (f.col(s.edges[e][1]) - f.col(s.edges[e][0])).norm();
        if (len == 0.0)
            throw ZeroLengthEdge("zero length edge (" + std::to_string(s.edges[e][0]) + "," +
                                 std::to_string(s.edges[e][1]) + ")");
        lambda(e) = std::log(len);
    }
    return lambda;
}

DiscreteMetric conformal_rescale(const SimplicialSurface& s, const DiscreteMetric& lambda,
                                 const PrimalForm0& u) {
    DiscreteMetric out = lambda + average(s, u);
    validate_metric(s, out);
    return out;
}

PrimalForm0 scale_factors(const SimplicialSurface& s, const DiscreteMetric& lambda,
                          const DiscreteMetric& lambda_ref) {
    PrimalForm0 u = PrimalForm0::Zero(s.nv());
    const DiscreteMetric d = lambda - lambda_ref;
    for (int fi = 0; fi < s.nf(); ++fi) {
        const auto& fe = s.face_edges[fi]; // edges (ij, jk, ki) of face (i,j,k)
        const auto& fv = s.faces[fi];
        // Per-face factor at vertex i is d_ij - d_jk + d_ki; rotate for j, k.
        for (int c = 0; c < 3; ++c)
            u(fv[c]) += d(fe[c]) - d(fe[(c + 1) % 3]) + d(fe[(c + 2) % 3]);
    }
    for (int v = 0; v < s.nv(); ++v) u(v) /= static_cast<double>(s.vertex_faces[v].size());
    return u;
}

} // namespace cws
