#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

namespace nlfem {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    constexpr Vec2() = default;
    constexpr Vec2(double xx, double yy) : x(xx), y(yy) {}

    constexpr Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
    constexpr Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
    constexpr Vec2 operator*(double s) const { return {x * s, y * s}; }
    constexpr Vec2 operator-() const { return {-x, -y}; }
    Vec2& operator+=(Vec2 o) { x += o.x; y += o.y; return *this; }
};

constexpr Vec2 operator*(double s, Vec2 v) { return {s * v.x, s * v.y}; }
constexpr double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
constexpr double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
constexpr double squared_norm(Vec2 v) { return dot(v, v); }
inline double norm(Vec2 v) { return std::sqrt(squared_norm(v)); }

/// Counterclockwise rotation by 90 degrees.
constexpr Vec2 perp(Vec2 v) { return {-v.y, v.x}; }

using Point = Vec2;

struct Triangle {
    std::array<Vec2, 3> v;

    Vec2 operator[](int i) const { return v[static_cast<std::size_t>(i)]; }

    double signed_area() const { return 0.5 * cross(v[1] - v[0], v[2] - v[0]); }

    Vec2 centroid() const {
        return {(v[0].x + v[1].x + v[2].x) / 3.0, (v[0].y + v[1].y + v[2].y) / 3.0};
    }

    /// Longest edge length.
    double diameter() const {
        return std::max({norm(v[1] - v[0]), norm(v[2] - v[1]), norm(v[0] - v[2])});
    }

    /// Radius of the centroid-centered circle containing the triangle.
    double bounding_radius() const {
        Vec2 g = centroid();
        return std::sqrt(std::max({squared_norm(v[0] - g), squared_norm(v[1] - g),
                                   squared_norm(v[2] - g)}));
    }

    bool contains(Vec2 p) const {
        double d0 = cross(v[1] - v[0], p - v[0]);
        double d1 = cross(v[2] - v[1], p - v[1]);
        double d2 = cross(v[0] - v[2], p - v[2]);
        return d0 >= 0.0 && d1 >= 0.0 && d2 >= 0.0;  // ccw triangles
    }
};

inline double point_segment_distance2(Vec2 p, Vec2 a, Vec2 b) {
    Vec2 d = b - a;
    double l2 = squared_norm(d);
    if (l2 == 0.0) return squared_norm(p - a);
    double t = std::clamp(dot(p - a, d) / l2, 0.0, 1.0);
    return squared_norm(p - (a + t * d));
}

inline bool segments_intersect(Vec2 a, Vec2 b, Vec2 c, Vec2 d) {
    auto orient = [](Vec2 p, Vec2 q, Vec2 r) {
        double v = cross(q - p, r - p);
        return (v > 0.0) - (v < 0.0);
    };
    int o1 = orient(a, b, c), o2 = orient(a, b, d);
    int o3 = orient(c, d, a), o4 = orient(c, d, b);
    if (o1 != o2 && o3 != o4) return true;
    auto on = [](Vec2 p, Vec2 q, Vec2 r) {
        return cross(q - p, r - p) == 0.0 && dot(r - p, r - q) <= 0.0;
    };
    return on(a, b, c) || on(a, b, d) || on(c, d, a) || on(c, d, b);
}

inline double segment_segment_distance2(Vec2 a, Vec2 b, Vec2 c, Vec2 d) {
    if (segments_intersect(a, b, c, d)) return 0.0;
    return std::min({point_segment_distance2(a, c, d), point_segment_distance2(b, c, d),
                     point_segment_distance2(c, a, b), point_segment_distance2(d, a, b)});
}

/// Exact euclidean distance between two triangles (0 if they overlap).
inline double triangle_distance(const Triangle& s, const Triangle& t) {
    if (s.contains(t[0]) || t.contains(s[0])) return 0.0;
    double best = std::numeric_limits<double>::max();
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            best = std::min(best, segment_segment_distance2(s[i], s[(i + 1) % 3],
                                                            t[j], t[(j + 1) % 3]));
    return std::sqrt(best);
}

inline double segment_triangle_distance(Vec2 a, Vec2 b, const Triangle& t) {
    if (t.contains(a) || t.contains(b)) return 0.0;
    double best = std::numeric_limits<double>::max();
    for (int i = 0; i < 3; ++i)
        best = std::min(best, segment_segment_distance2(a, b, t[i], t[(i + 1) % 3]));
    return std::sqrt(best);
}

inline double point_triangle_distance(Vec2 p, const Triangle& t) {
    if (t.contains(p)) return 0.0;
    double best = std::numeric_limits<double>::max();
    for (int i = 0; i < 3; ++i)
        best = std::min(best, point_segment_distance2(p, t[i], t[(i + 1) % 3]));
    return std::sqrt(best);
}

} // namespace nlfem
