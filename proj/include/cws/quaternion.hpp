#pragma once

#include <Eigen/Dense>

namespace cws {

// Quaternion templated on the scalar so that derivative types can flow
// through the circle-geometry kernel. Vectors in R^3 are identified with
// imaginary (pure) quaternions.
template <typename S>
struct Quat {
    S w, x, y, z;

    Quat() : w(S(0)), x(S(0)), y(S(0)), z(S(0)) {}
    Quat(S w_, S x_, S y_, S z_) : w(w_), x(x_), y(y_), z(z_) {}

    static Quat pure(S px, S py, S pz) { return Quat(S(0), px, py, pz); }

    Quat conj() const { return Quat(w, -x, -y, -z); }
    S re() const { return w; }

    Quat operator+(const Quat& q) const { return Quat(w + q.w, x + q.x, y + q.y, z + q.z); }
    Quat operator-(const Quat& q) const { return Quat(w - q.w, x - q.x, y - q.y, z - q.z); }
    Quat operator-() const { return Quat(-w, -x, -y, -z); }

    Quat operator*(const Quat& q) const {
        return Quat(w * q.w - x * q.x - y * q.y - z * q.z,
                    w * q.x + x * q.w + y * q.z - z * q.y,
                    w * q.y - x * q.z + y * q.w + z * q.x,
                    w * q.z + x * q.y - y * q.x + z * q.w);
    }

    Quat operator*(const S& s) const { return Quat(w * s, x * s, y * s, z * s); }

    S norm2() const { return w * w + x * x + y * y + z * z; }
};

inline Quat<double> pure(const Eigen::Vector3d& v) {
    return Quat<double>::pure(v.x(), v.y(), v.z());
}

inline Eigen::Vector3d im(const Quat<double>& q) { return {q.x, q.y, q.z}; }

// Quaternionic inverse of a pure quaternion x: -x/|x|^2.
inline Eigen::Vector3d pure_inverse(const Eigen::Vector3d& x) { return -x / x.squaredNorm(); }

} // namespace cws
