#pragma once

#include <array>
#include <cmath>

namespace infconv {

// Points and vectors live in at most two dimensions. 1D objects keep the
// second coordinate at zero, so the Euclidean helpers below work unchanged.
using Vec2 = std::array<double, 2>;

inline Vec2 vec(double x) { return {x, 0.0}; }
inline Vec2 vec(double x, double y) { return {x, y}; }

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a[0] + b[0], a[1] + b[1]}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a[0] - b[0], a[1] - b[1]}; }
inline Vec2 operator-(Vec2 a) { return {-a[0], -a[1]}; }
inline Vec2 operator*(double t, Vec2 a) { return {t * a[0], t * a[1]}; }

inline double dot(Vec2 a, Vec2 b) { return a[0] * b[0] + a[1] * b[1]; }
inline double cross(Vec2 a, Vec2 b) { return a[0] * b[1] - a[1] * b[0]; }
inline double norm2sq(Vec2 a) { return dot(a, a); }
inline double norm2(Vec2 a) { return std::sqrt(norm2sq(a)); }
inline double norm1(Vec2 a) { return std::abs(a[0]) + std::abs(a[1]); }
inline double norm_inf(Vec2 a) { return std::max(std::abs(a[0]), std::abs(a[1])); }

inline Vec2 normalized(Vec2 a) {
    double n = norm2(a);
    return n > 0 ? Vec2{a[0] / n, a[1] / n} : Vec2{0, 0};
}

// Rotate by -90 degrees; maps a CCW polygon edge to its outward normal.
inline Vec2 outward_normal(Vec2 edge) { return {edge[1], -edge[0]}; }

inline double point_segment_distance(Vec2 p, Vec2 a, Vec2 b) {
    Vec2 ab = b - a;
    double L2 = norm2sq(ab);
    if (L2 == 0) return norm2(p - a);
    double t = dot(p - a, ab) / L2;
    t = std::clamp(t, 0.0, 1.0);
    return norm2(p - (a + t * ab));
}

}  // namespace infconv
