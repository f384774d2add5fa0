#pragma once

#include "crossim/geometry.hpp"

namespace crossim {

/// TTC values are capped here; the cap doubles as the "no collision course"
/// sentinel, so a reading of kTtcCap means either "far away in time" or
/// "never", and both are treated the same downstream.
inline constexpr double kTtcCap = 4.0;

/// Time until the relative position d + u*t first enters the disc of the
/// given radius, assuming both parties keep their current velocities.
/// Already overlapping returns 0; no future entry returns kTtcCap.
inline double time_to_collision(const Vec2& rel_pos, const Vec2& rel_vel, double radius,
                                double cap = kTtcCap) {
  // |d + u t|^2 = r^2  expands to  a t^2 + 2 b t + c = 0.
  double a = rel_vel.dot(rel_vel);
  double b = rel_pos.dot(rel_vel);
  double c = rel_pos.dot(rel_pos) - radius * radius;
  if (c <= 0.0) return 0.0;  // already inside the disc
  if (a == 0.0) return cap;  // no relative motion
  double disc = b * b - a * c;
  if (disc < 0.0) return cap;  // paths never meet
  double t = (-b - std::sqrt(disc)) / a;
  if (t < 0.0) return cap;  // closest approach is in the past
  return std::min(t, cap);
}

}  // namespace crossim
