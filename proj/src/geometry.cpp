#include "recplant/core/geometry.hpp"

#include <algorithm>

namespace recplant {

double point_segment_distance(const Vec2& p, const Vec2& a, const Vec2& b) {
    Vec2 ab = b - a;
    double len2 = ab.norm2();
    if (len2 <= 0) return distance(p, a);
    double t = std::clamp((p - a).dot(ab) / len2, 0.0, 1.0);
    return distance(p, a + ab * t);
}

std::optional<double> ray_segment(const Vec2& origin, const Vec2& dir, const Vec2& a,
                                  const Vec2& b) {
    // origin + t*dir = a + s*(b-a), t >= 0, s in [0,1]
    Vec2 ab = b - a;
    double denom = dir.x * ab.y - dir.y * ab.x;
    if (std::abs(denom) < 1e-15) return std::nullopt; // parallel
    Vec2 oa = a - origin;
    double t = (oa.x * ab.y - oa.y * ab.x) / denom;
    double s = (oa.x * dir.y - oa.y * dir.x) / denom;
    if (t < 0 || s < 0 || s > 1) return std::nullopt;
    return t;
}

std::optional<double> ray_circle(const Vec2& origin, const Vec2& dir, const Vec2& c, double r) {
    Vec2 oc = origin - c;
    double b = 2.0 * oc.dot(dir);
    double cc = oc.norm2() - r * r;
    double disc = b * b - 4.0 * cc;
    if (disc < 0) return std::nullopt;
    double sq = std::sqrt(disc);
    double t1 = (-b - sq) / 2.0;
    double t2 = (-b + sq) / 2.0;
    if (t1 >= 0) return t1;
    if (t2 >= 0) return t2;
    return std::nullopt;
}

static double cross(const Vec2& o, const Vec2& a, const Vec2& b) {
    return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

bool segments_intersect(const Vec2& p, const Vec2& q, const Vec2& a, const Vec2& b) {
    double d1 = cross(a, b, p);
    double d2 = cross(a, b, q);
    double d3 = cross(p, q, a);
    double d4 = cross(p, q, b);
    if (((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) &&
        ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0)))
        return true;
    auto on = [](const Vec2& s, const Vec2& e, const Vec2& pt) {
        return std::min(s.x, e.x) - 1e-12 <= pt.x && pt.x <= std::max(s.x, e.x) + 1e-12 &&
               std::min(s.y, e.y) - 1e-12 <= pt.y && pt.y <= std::max(s.y, e.y) + 1e-12;
    };
    if (std::abs(d1) < 1e-12 && on(a, b, p)) return true;
    if (std::abs(d2) < 1e-12 && on(a, b, q)) return true;
    if (std::abs(d3) < 1e-12 && on(p, q, a)) return true;
    if (std::abs(d4) < 1e-12 && on(p, q, b)) return true;
    return false;
}

bool segment_intersects_rect(const Vec2& p, const Vec2& q, const Rect& r) {
    if (r.contains(p) || r.contains(q)) return true;
    std::vector<std::pair<Vec2, Vec2>> es;
    r.edges(es);
    for (auto& e : es)
        if (segments_intersect(p, q, e.first, e.second)) return true;
    return false;
}

std::optional<double> sweep_point_circle(const Vec2& p0, const Vec2& d, const Vec2& c, double r,
                                         double t_max) {
    Vec2 m = p0 - c;
    double a = d.norm2();
    double b = 2.0 * m.dot(d);
    double cc = m.norm2() - r * r;
    if (cc <= 0) {
        // already inside/touching: contact immediately if approaching
        if (b < 0) return 0.0;
        return std::nullopt;
    }
    if (a < 1e-18) return std::nullopt; // not moving
    double disc = b * b - 4.0 * a * cc;
    if (disc < 0) return std::nullopt;
    double t = (-b - std::sqrt(disc)) / (2.0 * a);
    if (t < 0 || t > t_max) return std::nullopt;
    return t;
}

std::optional<double> sweep_circle_segment(const Vec2& p0, const Vec2& d, double r, const Vec2& a,
                                           const Vec2& b, double t_max) {
    std::optional<double> best;
    auto consider = [&](std::optional<double> t) {
        if (t && (!best || *t < *best)) best = t;
    };
    // endpoint circles
    consider(sweep_point_circle(p0, d, a, r, t_max));
    consider(sweep_point_circle(p0, d, b, r, t_max));
    // side lines offset by r: solve distance-to-line == r with motion projected
    // onto the segment normal
    Vec2 ab = b - a;
    double len = ab.norm();
    if (len > 1e-12) {
        Vec2 n{-ab.y / len, ab.x / len};
        double dist0 = (p0 - a).dot(n); // signed distance to the line
        double vel = d.dot(n);
        double side = dist0 >= 0 ? 1.0 : -1.0;
        double target = side * r;
        if (std::abs(vel) > 1e-18) {
            double t = (target - dist0) / vel;
            if (t >= 0 && t <= t_max && side * vel < 0) {
                // hit point must project within the segment
                Vec2 hit = p0 + d * t;
                double s = (hit - a).dot(ab) / (len * len);
                if (s >= 0 && s <= 1) consider(t);
            }
        } else if (std::abs(dist0) <= r) {
            // moving parallel while already within r of the line: endpoint
            // circles above handle the capsule caps; nothing extra here
        }
    }
    return best;
}

} // namespace recplant
