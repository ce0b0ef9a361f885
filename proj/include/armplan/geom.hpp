#pragma once

#include <cmath>

namespace armplan {

/// Planar point / vector.
struct Point2 {
    double x = 0.0;
    double y = 0.0;
};

inline Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
inline Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
inline Point2 operator-(Point2 a) { return {-a.x, -a.y}; }
inline Point2 operator*(double s, Point2 p) { return {s * p.x, s * p.y}; }
inline Point2 operator*(Point2 p, double s) { return {s * p.x, s * p.y}; }

inline Point2& operator+=(Point2& a, Point2 b) { a.x += b.x; a.y += b.y; return a; }
inline Point2& operator-=(Point2& a, Point2 b) { a.x -= b.x; a.y -= b.y; return a; }

inline double dot(Point2 a, Point2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Point2 a, Point2 b) { return a.x * b.y - a.y * b.x; }
inline double norm2(Point2 p) { return p.x * p.x + p.y * p.y; }
inline double norm(Point2 p) { return std::sqrt(norm2(p)); }
inline double distance(Point2 a, Point2 b) { return norm(a - b); }

/// Counter-clockwise rotation by an angle in radians.
inline Point2 rotate(Point2 p, double angle) {
    const double c = std::cos(angle), s = std::sin(angle);
    return {c * p.x - s * p.y, s * p.x + c * p.y};
}

/// Counter-clockwise quarter turn.
inline Point2 perp(Point2 p) { return {-p.y, p.x}; }

/// Axis-aligned bounding box.
struct Aabb {
    Point2 lo;
    Point2 hi;
};

inline Aabb merge(const Aabb& a, const Aabb& b) {
    return {{std::min(a.lo.x, b.lo.x), std::min(a.lo.y, b.lo.y)},
            {std::max(a.hi.x, b.hi.x), std::max(a.hi.y, b.hi.y)}};
}

}  // namespace armplan
