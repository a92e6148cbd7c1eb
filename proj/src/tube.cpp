#include "cws/tube.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "cws/errors.hpp"

namespace cws {

namespace {

constexpr double kPi = std::numbers::pi;

struct ClosedCurve {
    Eigen::Matrix3Xd x; // distinct samples, implicitly closed
    Eigen::VectorXd a;
};

ClosedCurve normalize_spec(const TubeSpec& spec) {
    if (spec.circumferential < 3 || spec.longitudinal < 3)
        throw DegenerateSample("tube resolutions must be at least 3");
    int n = static_cast<int>(spec.centerline.cols());
    if (n >= 2 && (spec.centerline.col(0) - spec.centerline.col(n - 1)).norm() == 0.0) --n;
    if (n < 3) throw DegenerateSample("centerline needs at least 3 distinct samples");
    ClosedCurve c;
    c.x = spec.centerline.leftCols(n);
    if (spec.thickness.size() == 1)
        c.a = Eigen::VectorXd::Constant(n, spec.thickness(0));
    else if (spec.thickness.size() >= n)
        c.a = spec.thickness.head(n);
    else
        throw DegenerateSample("thickness must be one value or one per sample");
    if ((c.a.array() <= 0.0).any()) throw DegenerateSample("thickness must be positive");
    for (int i = 0; i < n; ++i)
        if ((c.x.col((i + 1) % n) - c.x.col(i)).norm() == 0.0)
            throw DegenerateSample("repeated centerline sample at index " + std::to_string(i));
    return c;
}

double signed_angle(const Eigen::Vector3d& u, const Eigen::Vector3d& v,
                    const Eigen::Vector3d& axis) {
    return std::atan2(u.cross(v).dot(axis), u.dot(v));
}

// Double-reflection transport of the normal r across one segment.
Eigen::Vector3d transport_step(const Eigen::Vector3d& x0, const Eigen::Vector3d& t0,
                               const Eigen::Vector3d& r0, const Eigen::Vector3d& x1,
                               const Eigen::Vector3d& t1) {
    const Eigen::Vector3d v1 = x1 - x0;
    const double c1 = v1.squaredNorm();
    const Eigen::Vector3d rl = r0 - (2.0 / c1) * v1.dot(r0) * v1;
    const Eigen::Vector3d tl = t0 - (2.0 / c1) * v1.dot(t0) * v1;
    const Eigen::Vector3d v2 = t1 - tl;
    const double c2 = v2.squaredNorm();
    if (c2 == 0.0) return rl;
    return rl - (2.0 / c2) * v2.dot(rl) * v2;
}

Eigen::Vector3d perpendicular_unit(const Eigen::Vector3d& t) {
    int k = 0;
    t.cwiseAbs().minCoeff(&k);
    Eigen::Vector3d r = Eigen::Vector3d::Unit(k);
    r -= r.dot(t) * t;
    return r.normalized();
}

// Frames r_0 .. r_n where index n is the transport of r_{n-1} back to sample
// 0; positions and tangents are indexed mod n.
std::vector<Eigen::Vector3d> transport_around(const Eigen::Matrix3Xd& x,
                                              const std::vector<Eigen::Vector3d>& t) {
    const int n = static_cast<int>(x.cols());
    std::vector<Eigen::Vector3d> r(n + 1);
    r[0] = perpendicular_unit(t[0]);
    for (int i = 0; i < n; ++i)
        r[i + 1] = transport_step(x.col(i), t[i], r[i], x.col((i + 1) % n), t[(i + 1) % n])
                       .normalized();
    return r;
}

std::vector<Eigen::Vector3d> vertex_tangents(const Eigen::Matrix3Xd& x) {
    const int n = static_cast<int>(x.cols());
    std::vector<Eigen::Vector3d> t(n);
    for (int i = 0; i < n; ++i) {
        const Eigen::Vector3d d = x.col((i + 1) % n) - x.col((i + n - 1) % n);
        if (d.norm() == 0.0) throw DegenerateSample("cusp in centerline at index " + std::to_string(i));
        t[i] = d.normalized();
    }
    return t;
}

} // namespace

TubeMesh generate_tube(const TubeSpec& spec) {
    const ClosedCurve c = normalize_spec(spec);
    const int nsrc = static_cast<int>(c.x.cols());
    const int n = spec.longitudinal, m = spec.circumferential;

    // Uniform arclength resampling of the closed polyline to n ring centers.
    Eigen::VectorXd cum(nsrc + 1);
    cum(0) = 0;
    for (int i = 0; i < nsrc; ++i)
        cum(i + 1) = cum(i) + (c.x.col((i + 1) % nsrc) - c.x.col(i)).norm();
    const double total = cum(nsrc);
    Eigen::Matrix3Xd centers(3, n);
    Eigen::VectorXd radius(n);
    int seg = 0;
    for (int k = 0; k < n; ++k) {
        const double sk = total * k / n;
        while (seg + 1 < nsrc && cum(seg + 1) <= sk) ++seg;
        const double w = (sk - cum(seg)) / (cum(seg + 1) - cum(seg));
        centers.col(k) = (1 - w) * c.x.col(seg) + w * c.x.col((seg + 1) % nsrc);
        radius(k) = (1 - w) * c.a(seg) + w * c.a((seg + 1) % nsrc);
    }

    const std::vector<Eigen::Vector3d> t = vertex_tangents(centers);
    const std::vector<Eigen::Vector3d> r = transport_around(centers, t);
    const double closing = signed_angle(r[n], r[0], t[0]);

    TubeMesh out;
    out.f.resize(3, n * m);
    for (int k = 0; k < n; ++k) {
        const Eigen::Vector3d rk =
            Eigen::AngleAxisd(closing * k / n, t[k]).toRotationMatrix() * r[k];
        const Eigen::Vector3d sk = t[k].cross(rk);
        for (int cc = 0; cc < m; ++cc) {
            const double phi = 2.0 * kPi * cc / m;
            out.f.col(k * m + cc) =
                centers.col(k) + radius(k) * (std::cos(phi) * rk + std::sin(phi) * sk);
        }
    }
    std::vector<std::array<int, 3>> faces;
    faces.reserve(2 * n * m);
    for (int k = 0; k < n; ++k)
        for (int cc = 0; cc < m; ++cc) {
            const int k1 = (k + 1) % n, c1 = (cc + 1) % m;
            const int A = k * m + cc, B = k * m + c1, C = k1 * m + c1, D = k1 * m + cc;
            faces.push_back({A, B, C});
            faces.push_back({A, C, D});
        }
    out.surface = build_surface(faces, n * m);
    return out;
}

TubeInvariants tube_invariants(const TubeSpec& spec) {
    const ClosedCurve c = normalize_spec(spec);
    const int n = static_cast<int>(c.x.cols());

    Eigen::VectorXd ds(n);
    std::vector<Eigen::Vector3d> e(n);
    for (int i = 0; i < n; ++i) {
        e[i] = c.x.col((i + 1) % n) - c.x.col(i);
        ds(i) = e[i].norm();
    }
    auto integrate = [&](auto&& g) {
        double sum = 0;
        for (int i = 0; i < n; ++i) sum += ds(i) * 0.5 * (g(i) + g((i + 1) % n));
        return sum;
    };
    Eigen::VectorXd kappa(n);
    for (int i = 0; i < n; ++i) {
        const Eigen::Vector3d& e1 = e[(i + n - 1) % n];
        const Eigen::Vector3d& e2 = e[i];
        const double chord = (e1 + e2).norm();
        if (chord == 0.0) throw DegenerateSample("cusp in centerline at index " + std::to_string(i));
        kappa(i) = 2.0 * e1.cross(e2).norm() / (e1.norm() * e2.norm() * chord);
    }

    TubeInvariants inv;
    inv.area = 2.0 * kPi * integrate([&](int i) { return c.a(i); });
    inv.volume = kPi * integrate([&](int i) { return c.a(i) * c.a(i); });
    inv.willmore =
        0.5 * kPi * integrate([&](int i) { return 1.0 / c.a(i) + 0.5 * c.a(i) * kappa(i) * kappa(i); });
    inv.im_tau = integrate([&](int i) { return 1.0 / c.a(i); });

    // Total torsion: the frame closing angle fixes Theta mod 2 pi; the
    // accumulated binormal rotation selects the winding.
    const std::vector<Eigen::Vector3d> t = vertex_tangents(c.x);
    const std::vector<Eigen::Vector3d> r = transport_around(c.x, t);
    inv.monodromy = -signed_angle(r[0], r[n], t[0]);

    std::vector<Eigen::Vector3d> binormal(n);
    std::vector<char> valid(n);
    for (int i = 0; i < n; ++i) {
        const Eigen::Vector3d b = e[(i + n - 1) % n].cross(e[i]);
        valid[i] = b.norm() > 1e-14 * e[(i + n - 1) % n].norm() * e[i].norm();
        binormal[i] = valid[i] ? b.normalized() : Eigen::Vector3d::Zero();
    }
    double acc = 0;
    for (int i = 0; i < n; ++i) {
        const int j = (i + 1) % n;
        if (valid[i] && valid[j]) acc += signed_angle(binormal[i], binormal[j], e[i] / ds(i));
    }
    inv.winding = static_cast<int>(std::lround((acc - inv.monodromy) / (2.0 * kPi)));
    inv.re_tau = inv.monodromy + 2.0 * kPi * inv.winding;
    if (std::abs(inv.re_tau) < 1e-12) inv.re_tau = 0.0;
    return inv;
}

} // namespace cws
