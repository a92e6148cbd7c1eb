#pragma once

#include <Eigen/Dense>
#include <cmath>

namespace cws {

// Forward-mode scalar carrying value, gradient and Hessian with respect to a
// fixed set of N independent variables. Used to obtain exact local Hessian
// blocks of per-edge and per-face quantities.
template <int N>
struct D2 {
    using G = Eigen::Matrix<double, N, 1>;
    using H = Eigen::Matrix<double, N, N>;

    double v;
    G g;
    H h;

    D2() : v(0) {
        g.setZero();
        h.setZero();
    }
    explicit D2(double value) : v(value) {
        g.setZero();
        h.setZero();
    }
    static D2 variable(double value, int index) {
        D2 r(value);
        r.g(index) = 1.0;
        return r;
    }

    D2 operator+(const D2& o) const {
        D2 r;
        r.v = v + o.v;
        r.g = g + o.g;
        r.h = h + o.h;
        return r;
    }
    D2 operator-(const D2& o) const {
        D2 r;
        r.v = v - o.v;
        r.g = g - o.g;
        r.h = h - o.h;
        return r;
    }
    D2 operator-() const {
        D2 r;
        r.v = -v;
        r.g = -g;
        r.h = -h;
        return r;
    }
    D2 operator*(const D2& o) const {
        D2 r;
        r.v = v * o.v;
        r.g = v * o.g + o.v * g;
        r.h = v * o.h + o.v * h + g * o.g.transpose() + o.g * g.transpose();
        return r;
    }
    D2 operator+(double c) const {
        D2 r = *this;
        r.v += c;
        return r;
    }
    D2 operator-(double c) const {
        D2 r = *this;
        r.v -= c;
        return r;
    }
    D2 operator*(double c) const {
        D2 r;
        r.v = v * c;
        r.g = g * c;
        r.h = h * c;
        return r;
    }
    D2 operator/(const D2& o) const { return *this * o.inverse(); }
    D2 inverse() const {
        D2 r;
        const double iv = 1.0 / v;
        r.v = iv;
        r.g = -iv * iv * g;
        r.h = -iv * iv * h + 2.0 * iv * iv * iv * g * g.transpose();
        return r;
    }

    friend D2 operator*(double c, const D2& a) { return a * c; }
    friend D2 operator-(double c, const D2& a) { return (-a) + c; }
    friend D2 operator+(double c, const D2& a) { return a + c; }

    friend D2 sqrt(const D2& a) {
        D2 r;
        const double s = std::sqrt(a.v);
        r.v = s;
        r.g = a.g / (2.0 * s);
        r.h = a.h / (2.0 * s) - a.g * a.g.transpose() / (4.0 * s * s * s);
        return r;
    }

    // Chain rule through f with derivatives f', f'' evaluated at this value.
    D2 chain(double fv, double fp, double fpp) const {
        D2 r;
        r.v = fv;
        r.g = fp * g;
        r.h = fp * h + fpp * g * g.transpose();
        return r;
    }

    friend D2 acos(const D2& a) {
        const double s2 = 1.0 - a.v * a.v;
        const double s = std::sqrt(s2);
        return a.chain(std::acos(a.v), -1.0 / s, -a.v / (s2 * s));
    }
    friend D2 log(const D2& a) { return a.chain(std::log(a.v), 1.0 / a.v, -1.0 / (a.v * a.v)); }
};

} // namespace cws
