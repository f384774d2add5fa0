#pragma once

#include <algorithm>
#include <cmath>

namespace crossim {

inline constexpr double kPi = 3.14159265358979323846;

inline double deg2rad(double deg) { return deg * kPi / 180.0; }
inline double rad2deg(double rad) { return rad * 180.0 / kPi; }

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
  Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
  Vec2 operator*(double s) const { return {x * s, y * s}; }
  double dot(const Vec2& o) const { return x * o.x + y * o.y; }
  double norm() const { return std::hypot(x, y); }
};

inline double distance(const Vec2& a, const Vec2& b) { return (a - b).norm(); }

/// Distance from point p to the axis-aligned rectangle centered at c with the
/// given half extents. Zero when p lies inside or on the boundary.
inline double rect_distance(const Vec2& p, const Vec2& c, double half_x, double half_y) {
  double dx = std::max(std::abs(p.x - c.x) - half_x, 0.0);
  double dy = std::max(std::abs(p.y - c.y) - half_y, 0.0);
  return std::hypot(dx, dy);
}

}  // namespace crossim
