#include "cws/qc_error.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/SVD>

#include "cws/errors.hpp"

namespace cws {

QcErrorReport quasi_conformal_error(const PrimalForm0V& f, const DiscreteMetric& lambda_ref,
                                    const SimplicialSurface& s) {
    QcErrorReport rep;
    rep.per_face.resize(s.nf());
    for (int fi = 0; fi < s.nf(); ++fi) {
        const auto& fv = s.faces[fi];
        const auto& fe = s.face_edges[fi];
        const double a = std::exp(lambda_ref(fe[0])); // |ij|
        const double b = std::exp(lambda_ref(fe[1])); // |jk|
        const double c = std::exp(lambda_ref(fe[2])); // |ki|
        // Lay out the reference triangle in the plane.
        const double x = (a * a + c * c - b * b) / (2.0 * a);
        const double y2 = c * c - x * x;
        if (!(y2 > 0.0))
            throw DegenerateTriangle("reference layout degenerate on face " + std::to_string(fi));
        Eigen::Matrix2d P;
        P << a, x, 0.0, std::sqrt(y2);
        Eigen::Matrix<double, 3, 2> E;
        E.col(0) = f.col(fv[1]) - f.col(fv[0]);
        E.col(1) = f.col(fv[2]) - f.col(fv[0]);
        const Eigen::Matrix<double, 3, 2> J = E * P.inverse();
        Eigen::JacobiSVD<Eigen::Matrix<double, 3, 2>> svd(J);
        const double s1 = svd.singularValues()(0), s2 = svd.singularValues()(1);
        if (!(s2 > 0.0)) throw DegenerateTriangle("degenerate immersed face " + std::to_string(fi));
        rep.per_face(fi) = s1 / s2;
    }
    rep.min = rep.per_face.minCoeff();
    rep.max = rep.per_face.maxCoeff();
    rep.mean = rep.per_face.mean();
    rep.hist_lo = 1.0;
    rep.hist_hi = std::max(2.0, rep.max);
    const double w = (rep.hist_hi - rep.hist_lo) / 64.0;
    for (int fi = 0; fi < s.nf(); ++fi) {
        int bin = static_cast<int>((rep.per_face(fi) - rep.hist_lo) / w);
        bin = std::clamp(bin, 0, 63);
        ++rep.histogram[bin];
    }
    return rep;
}

} // namespace cws
