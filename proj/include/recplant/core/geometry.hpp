#pragma once

#include <cmath>
#include <optional>
#include <vector>

namespace recplant {

constexpr double kPi = 3.14159265358979323846;

// wrap to [-pi, pi)
inline double wrap_angle(double a) {
    a = std::fmod(a + kPi, 2.0 * kPi);
    if (a < 0) a += 2.0 * kPi;
    return a - kPi;
}

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
    Vec2 operator*(double s) const { return {x * s, y * s}; }
    double dot(const Vec2& o) const { return x * o.x + y * o.y; }
    double norm2() const { return x * x + y * y; }
    double norm() const { return std::sqrt(norm2()); }
    Vec2 normalized() const {
        double n = norm();
        return n > 0 ? Vec2{x / n, y / n} : Vec2{0, 0};
    }
};

inline double distance(const Vec2& a, const Vec2& b) { return (a - b).norm(); }

struct Pose {
    double x = 0.0;
    double y = 0.0;
    double heading = 0.0; // radians, wrapped to [-pi, pi)

    Vec2 position() const { return {x, y}; }
};

// Axis-aligned rectangle, min-corner + size.
struct Rect {
    double x = 0.0;
    double y = 0.0;
    double w = 0.0;
    double h = 0.0;

    bool contains(const Vec2& p) const {
        return p.x >= x && p.x <= x + w && p.y >= y && p.y <= y + h;
    }
    Vec2 center() const { return {x + w / 2.0, y + h / 2.0}; }
    // the four edges as segments (a, b)
    void edges(std::vector<std::pair<Vec2, Vec2>>& out) const {
        Vec2 a{x, y}, b{x + w, y}, c{x + w, y + h}, d{x, y + h};
        out.push_back({a, b});
        out.push_back({b, c});
        out.push_back({c, d});
        out.push_back({d, a});
    }
};

struct Segment {
    Vec2 a;
    Vec2 b;
};

// Distance from point p to segment ab.
double point_segment_distance(const Vec2& p, const Vec2& a, const Vec2& b);

// Ray from origin along unit direction dir vs segment; returns distance along
// the ray or nullopt if no hit.
std::optional<double> ray_segment(const Vec2& origin, const Vec2& dir, const Vec2& a, const Vec2& b);

// Ray vs circle (center c, radius r); nearest non-negative hit distance.
std::optional<double> ray_circle(const Vec2& origin, const Vec2& dir, const Vec2& c, double r);

// Do segments pq and ab properly intersect (including touching)?
bool segments_intersect(const Vec2& p, const Vec2& q, const Vec2& a, const Vec2& b);

bool segment_intersects_rect(const Vec2& p, const Vec2& q, const Rect& r);

// Earliest time t in [0, t_max] at which a point moving p(t) = p0 + t*d comes
// within radius r of the static point c, given it starts outside. nullopt if
// no contact within t_max.
std::optional<double> sweep_point_circle(const Vec2& p0, const Vec2& d, const Vec2& c, double r,
                                         double t_max);

// Earliest time t in [0, t_max] at which a disc of radius r moving p(t) = p0 + t*d
// touches segment ab. nullopt if none.
std::optional<double> sweep_circle_segment(const Vec2& p0, const Vec2& d, double r, const Vec2& a,
                                           const Vec2& b, double t_max);

} // namespace recplant
