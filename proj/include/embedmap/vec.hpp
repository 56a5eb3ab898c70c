#pragma once

#include <algorithm>
#include <array>
#include <cmath>

#include "embedmap/error.hpp"

namespace embedmap {

struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    constexpr Vec3() = default;
    constexpr Vec3(double x_, double y_, double z_) : x(x_), y(y_), z(z_) {}

    constexpr Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    constexpr Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    constexpr Vec3 operator-() const { return {-x, -y, -z}; }
    constexpr Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
    constexpr Vec3 operator/(double s) const { return {x / s, y / s, z / s}; }
    Vec3& operator+=(const Vec3& o) {
        x += o.x;
        y += o.y;
        z += o.z;
        return *this;
    }
};

constexpr Vec3 operator*(double s, const Vec3& v) { return v * s; }

constexpr double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

constexpr Vec3 cross(const Vec3& a, const Vec3& b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

inline double length(const Vec3& v) { return std::sqrt(dot(v, v)); }

inline bool finite(const Vec3& v) {
    return std::isfinite(v.x) && std::isfinite(v.y) && std::isfinite(v.z);
}

inline Vec3 normalize(const Vec3& v) {
    const double len = length(v);
    if (!(len > 0.0) || !std::isfinite(len))
        throw ValidationError("cannot normalize zero or non-finite vector");
    return v / len;
}

// Unit 3-vector in world space. The constructor normalizes; a zero or
// non-finite input is rejected.
class UnitDirection {
public:
    UnitDirection(double x, double y, double z) : UnitDirection(Vec3{x, y, z}) {}
    explicit UnitDirection(const Vec3& v) : v_(normalize(v)) {}

    double x() const { return v_.x; }
    double y() const { return v_.y; }
    double z() const { return v_.z; }
    const Vec3& vec() const { return v_; }

private:
    Vec3 v_;
};

inline double angle_between(const UnitDirection& a, const UnitDirection& b) {
    const double c = std::clamp(dot(a.vec(), b.vec()), -1.0, 1.0);
    return std::acos(c);
}

// Row-major 3x3 matrix.
struct Mat3 {
    std::array<double, 9> m{1, 0, 0, 0, 1, 0, 0, 0, 1};

    static Mat3 identity() { return Mat3{}; }

    static Mat3 from_rows(const Vec3& r0, const Vec3& r1, const Vec3& r2) {
        return Mat3{{r0.x, r0.y, r0.z, r1.x, r1.y, r1.z, r2.x, r2.y, r2.z}};
    }

    double operator()(int r, int c) const { return m[static_cast<size_t>(r) * 3 + c]; }

    Vec3 row(int r) const { return {m[r * 3 + 0], m[r * 3 + 1], m[r * 3 + 2]}; }

    Vec3 operator*(const Vec3& v) const {
        return {dot(row(0), v), dot(row(1), v), dot(row(2), v)};
    }

    Mat3 transposed() const {
        return Mat3{{m[0], m[3], m[6], m[1], m[4], m[7], m[2], m[5], m[8]}};
    }

    double det() const {
        return m[0] * (m[4] * m[8] - m[5] * m[7]) - m[1] * (m[3] * m[8] - m[5] * m[6]) +
               m[2] * (m[3] * m[7] - m[4] * m[6]);
    }
};

inline Mat3 operator*(const Mat3& a, const Mat3& b) {
    Mat3 r;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            double s = 0.0;
            for (int k = 0; k < 3; ++k) s += a(i, k) * b(k, j);
            r.m[static_cast<size_t>(i) * 3 + j] = s;
        }
    return r;
}

}  // namespace embedmap
