#include "cws/measures.hpp"

#include "cws/autodiff.hpp"
#include "cws/errors.hpp"

namespace cws {

namespace {

using S9 = D2<9>;

// Triangle area as a second-order scalar in the 9 vertex coordinates.
S9 face_area_d2(const Eigen::Matrix3d& pts) {
    S9 e1[3], e2[3];
    for (int d = 0; d < 3; ++d) {
        e1[d] = S9(pts(d, 1) - pts(d, 0));
        e1[d].g(3 + d) = 1.0;
        e1[d].g(d) = -1.0;
        e2[d] = S9(pts(d, 2) - pts(d, 0));
        e2[d].g(6 + d) = 1.0;
        e2[d].g(d) = -1.0;
    }
    const S9 cx = e1[1] * e2[2] - e1[2] * e2[1];
    const S9 cy = e1[2] * e2[0] - e1[0] * e2[2];
    const S9 cz = e1[0] * e2[1] - e1[1] * e2[0];
    return sqrt(cx * cx + cy * cy + cz * cz) * 0.5;
}

// Signed volume contribution <f_i, f_j x f_k>/6.
S9 face_volume_d2(const Eigen::Matrix3d& pts) {
    S9 p[3][3];
    for (int c = 0; c < 3; ++c)
        for (int d = 0; d < 3; ++d) {
            p[c][d] = S9(pts(d, c));
            p[c][d].g(3 * c + d) = 1.0;
        }
    const S9 cx = p[1][1] * p[2][2] - p[1][2] * p[2][1];
    const S9 cy = p[1][2] * p[2][0] - p[1][0] * p[2][2];
    const S9 cz = p[1][0] * p[2][1] - p[1][1] * p[2][0];
    return (p[0][0] * cx + p[0][1] * cy + p[0][2] * cz) * (1.0 / 6.0);
}

template <typename Fn>
void accumulate_faces(const PrimalForm0V& f, const SimplicialSurface& s, Fn&& per_face) {
    for (int fi = 0; fi < s.nf(); ++fi) {
        Eigen::Matrix3d pts;
        for (int c = 0; c < 3; ++c) pts.col(c) = f.col(s.faces[fi][c]);
        per_face(fi, pts);
    }
}

void scatter_gradient(const S9& val, const std::array<int, 3>& fv, DualForm2V& grad) {
    for (int c = 0; c < 3; ++c)
        for (int d = 0; d < 3; ++d) grad(d, fv[c]) += val.g(3 * c + d);
}

void scatter_hessian(const S9& val, const std::array<int, 3>& fv, double weight,
                     std::vector<Eigen::Triplet<double>>& triplets) {
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b)
            for (int da = 0; da < 3; ++da)
                for (int db = 0; db < 3; ++db) {
                    const double v = weight * val.h(3 * a + da, 3 * b + db);
                    if (v != 0.0) triplets.emplace_back(3 * fv[a] + da, 3 * fv[b] + db, v);
                }
}

} // namespace

double total_area(const PrimalForm0V& f, const SimplicialSurface& s) {
    double area = 0;
    accumulate_faces(f, s, [&](int, const Eigen::Matrix3d& pts) {
        area += 0.5 * (pts.col(1) - pts.col(0)).cross(pts.col(2) - pts.col(0)).norm();
    });
    return area;
}

DualForm2V area_gradient(const PrimalForm0V& f, const SimplicialSurface& s) {
    DualForm2V grad = DualForm2V::Zero(3, s.nv());
    accumulate_faces(f, s, [&](int fi, const Eigen::Matrix3d& pts) {
        scatter_gradient(face_area_d2(pts), s.faces[fi], grad);
    });
    return grad;
}

void area_hessian(const PrimalForm0V& f, const SimplicialSurface& s, double weight,
                  std::vector<Eigen::Triplet<double>>& triplets) {
    accumulate_faces(f, s, [&](int fi, const Eigen::Matrix3d& pts) {
        scatter_hessian(face_area_d2(pts), s.faces[fi], weight, triplets);
    });
}

double enclosed_volume(const PrimalForm0V& f, const SimplicialSurface& s) {
    if (!s.closed()) throw SurfaceHasBoundary("enclosed volume requires a closed surface");
    double vol = 0;
    accumulate_faces(f, s, [&](int, const Eigen::Matrix3d& pts) {
        vol += pts.col(0).dot(pts.col(1).cross(pts.col(2))) / 6.0;
    });
    return vol;
}

DualForm2V volume_gradient(const PrimalForm0V& f, const SimplicialSurface& s) {
    if (!s.closed()) throw SurfaceHasBoundary("enclosed volume requires a closed surface");
    DualForm2V grad = DualForm2V::Zero(3, s.nv());
    accumulate_faces(f, s, [&](int fi, const Eigen::Matrix3d& pts) {
        scatter_gradient(face_volume_d2(pts), s.faces[fi], grad);
    });
    return grad;
}

void volume_hessian(const PrimalForm0V& f, const SimplicialSurface& s, double weight,
                    std::vector<Eigen::Triplet<double>>& triplets) {
    accumulate_faces(f, s, [&](int fi, const Eigen::Matrix3d& pts) {
        scatter_hessian(face_volume_d2(pts), s.faces[fi], weight, triplets);
    });
}

} // namespace cws
