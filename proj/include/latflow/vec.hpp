#pragma once

#include <array>
#include <cmath>
#include <span>
#include <stdexcept>

namespace latflow {

struct Vec2 {
    double x{0.0}, y{0.0};

    Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
    Vec2 operator-() const { return {-x, -y}; }
    Vec2 operator*(double s) const { return {x * s, y * s}; }

    double dot(Vec2 o) const { return x * o.x + y * o.y; }
    double cross(Vec2 o) const { return x * o.y - y * o.x; }
    double norm2() const { return x * x + y * y; }
    double norm() const { return std::sqrt(norm2()); }
    double angle() const { return std::atan2(y, x); }
};

inline Vec2 operator*(double s, Vec2 v) { return v * s; }
inline double dot(Vec2 u, Vec2 v) { return u.dot(v); }
inline double cross(Vec2 u, Vec2 v) { return u.cross(v); }

// 2x2 real matrix [[a, b], [c, d]]; columns are (a, c) and (b, d).
struct Mat2 {
    double a{1.0}, b{0.0}, c{0.0}, d{1.0};

    static Mat2 identity() { return {}; }
    static Mat2 from_columns(Vec2 u, Vec2 v) { return {u.x, v.x, u.y, v.y}; }
    static Mat2 rotation(double phi) {
        const double cp = std::cos(phi), sp = std::sin(phi);
        return {cp, -sp, sp, cp};
    }

    Vec2 col(int j) const { return j == 0 ? Vec2{a, c} : Vec2{b, d}; }
    double det() const { return a * d - b * c; }

    Mat2 inverse() const {
        const double dt = det();
        if (std::abs(dt) < 1e-300) throw std::domain_error("Mat2::inverse: singular matrix");
        return {d / dt, -b / dt, -c / dt, a / dt};
    }

    Vec2 operator*(Vec2 v) const { return {a * v.x + b * v.y, c * v.x + d * v.y}; }
    Mat2 operator*(const Mat2& o) const {
        return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
    }
};

// Small dense matrix for dimensions up to 4, column-major storage.
struct MatN {
    int dim{2};
    std::array<double, 16> m{};  // m[j*4 + i] = entry (i, j)

    static MatN identity(int dim) {
        MatN r;
        r.dim = dim;
        for (int i = 0; i < dim; ++i) r.at(i, i) = 1.0;
        return r;
    }
    static MatN from_mat2(const Mat2& g) {
        MatN r;
        r.dim = 2;
        r.at(0, 0) = g.a;
        r.at(0, 1) = g.b;
        r.at(1, 0) = g.c;
        r.at(1, 1) = g.d;
        return r;
    }

    double& at(int i, int j) { return m[j * 4 + i]; }
    double at(int i, int j) const { return m[j * 4 + i]; }

    std::array<double, 4> col(int j) const {
        std::array<double, 4> v{};
        for (int i = 0; i < dim; ++i) v[i] = at(i, j);
        return v;
    }
    void set_col(int j, std::span<const double> v) {
        for (int i = 0; i < dim; ++i) at(i, j) = v[i];
    }

    MatN operator*(const MatN& o) const {
        MatN r;
        r.dim = dim;
        for (int j = 0; j < dim; ++j)
            for (int i = 0; i < dim; ++i) {
                double s = 0.0;
                for (int k = 0; k < dim; ++k) s += at(i, k) * o.at(k, j);
                r.at(i, j) = s;
            }
        return r;
    }

    double det() const;
    MatN inverse() const;  // Gauss-Jordan with partial pivoting
};

inline double dot_n(std::span<const double> u, std::span<const double> v, int dim) {
    double s = 0.0;
    for (int i = 0; i < dim; ++i) s += u[i] * v[i];
    return s;
}

inline double norm2_n(std::span<const double> u, int dim) { return dot_n(u, u, dim); }

}  // namespace latflow
