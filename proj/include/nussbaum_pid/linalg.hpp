#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <stdexcept>

namespace nussbaum_pid {

/// Fixed-size 2-vector used for joint-space quantities.
struct Vec2 {
    std::array<double, 2> v{0.0, 0.0};

    constexpr Vec2() = default;
    constexpr Vec2(double a, double b) : v{a, b} {}

    constexpr double &operator[](std::size_t i) { return v[i]; }
    constexpr double operator[](std::size_t i) const { return v[i]; }

    constexpr Vec2 &operator+=(const Vec2 &o) {
        v[0] += o.v[0];
        v[1] += o.v[1];
        return *this;
    }
    constexpr Vec2 &operator-=(const Vec2 &o) {
        v[0] -= o.v[0];
        v[1] -= o.v[1];
        return *this;
    }
    constexpr Vec2 &operator*=(double s) {
        v[0] *= s;
        v[1] *= s;
        return *this;
    }

    friend constexpr bool operator==(const Vec2 &, const Vec2 &) = default;
};

constexpr Vec2 operator+(Vec2 a, const Vec2 &b) { return a += b; }
constexpr Vec2 operator-(Vec2 a, const Vec2 &b) { return a -= b; }
constexpr Vec2 operator-(const Vec2 &a) { return {-a[0], -a[1]}; }
constexpr Vec2 operator*(double s, Vec2 a) { return a *= s; }
constexpr Vec2 operator*(Vec2 a, double s) { return a *= s; }

constexpr double dot(const Vec2 &a, const Vec2 &b) { return a[0] * b[0] + a[1] * b[1]; }
constexpr double squared_norm(const Vec2 &a) { return dot(a, a); }
inline double norm(const Vec2 &a) { return std::hypot(a[0], a[1]); }
inline bool is_finite(const Vec2 &a) { return std::isfinite(a[0]) && std::isfinite(a[1]); }

/// Row-major 2x2 matrix.
struct Mat2 {
    std::array<double, 4> a{0.0, 0.0, 0.0, 0.0};

    constexpr Mat2() = default;
    constexpr Mat2(double m00, double m01, double m10, double m11) : a{m00, m01, m10, m11} {}

    static constexpr Mat2 identity() { return {1.0, 0.0, 0.0, 1.0}; }
    static constexpr Mat2 diagonal(double d0, double d1) { return {d0, 0.0, 0.0, d1}; }

    constexpr double &operator()(std::size_t r, std::size_t c) { return a[2 * r + c]; }
    constexpr double operator()(std::size_t r, std::size_t c) const { return a[2 * r + c]; }

    constexpr double determinant() const { return a[0] * a[3] - a[1] * a[2]; }
    constexpr double trace() const { return a[0] + a[3]; }
    constexpr Mat2 transpose() const { return {a[0], a[2], a[1], a[3]}; }

    friend constexpr bool operator==(const Mat2 &, const Mat2 &) = default;
};

constexpr Mat2 operator+(const Mat2 &x, const Mat2 &y) {
    return {x.a[0] + y.a[0], x.a[1] + y.a[1], x.a[2] + y.a[2], x.a[3] + y.a[3]};
}
constexpr Mat2 operator-(const Mat2 &x, const Mat2 &y) {
    return {x.a[0] - y.a[0], x.a[1] - y.a[1], x.a[2] - y.a[2], x.a[3] - y.a[3]};
}
constexpr Mat2 operator*(double s, const Mat2 &x) { return {s * x.a[0], s * x.a[1], s * x.a[2], s * x.a[3]}; }
constexpr Vec2 operator*(const Mat2 &m, const Vec2 &x) {
    return {m.a[0] * x[0] + m.a[1] * x[1], m.a[2] * x[0] + m.a[3] * x[1]};
}
constexpr Mat2 operator*(const Mat2 &x, const Mat2 &y) {
    return {x.a[0] * y.a[0] + x.a[1] * y.a[2], x.a[0] * y.a[1] + x.a[1] * y.a[3],
            x.a[2] * y.a[0] + x.a[3] * y.a[2], x.a[2] * y.a[1] + x.a[3] * y.a[3]};
}

/// x^T m y
constexpr double quadratic_form(const Vec2 &x, const Mat2 &m, const Vec2 &y) { return dot(x, m * y); }

/// Solves m * x = rhs by Cramer's rule. Throws std::domain_error when m is numerically singular.
inline Vec2 solve(const Mat2 &m, const Vec2 &rhs) {
    const double det = m.determinant();
    const double scale = std::abs(m.a[0]) + std::abs(m.a[1]) + std::abs(m.a[2]) + std::abs(m.a[3]);
    if (!(std::abs(det) > 1e-14 * scale * scale)) {
        throw std::domain_error("singular 2x2 system");
    }
    return {(m.a[3] * rhs[0] - m.a[1] * rhs[1]) / det, (m.a[0] * rhs[1] - m.a[2] * rhs[0]) / det};
}

/// Eigenvalues of a symmetric 2x2 matrix, ascending.
inline std::array<double, 2> symmetric_eigenvalues(const Mat2 &m) {
    const double mean = 0.5 * m.trace();
    const double half_diff = 0.5 * (m.a[0] - m.a[3]);
    const double off = 0.5 * (m.a[1] + m.a[2]);
    const double radius = std::hypot(half_diff, off);
    return {mean - radius, mean + radius};
}

}  // namespace nussbaum_pid
