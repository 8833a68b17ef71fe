#pragma once

#include <cmath>
#include <compare>

namespace twotier {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  friend constexpr Vec2 operator+(Vec2 u, Vec2 v) { return {u.x + v.x, u.y + v.y}; }
  friend constexpr Vec2 operator-(Vec2 u, Vec2 v) { return {u.x - v.x, u.y - v.y}; }
  friend constexpr Vec2 operator*(double s, Vec2 v) { return {s * v.x, s * v.y}; }
  friend constexpr Vec2 operator*(Vec2 v, double s) { return {s * v.x, s * v.y}; }
  friend constexpr Vec2 operator/(Vec2 v, double s) { return {v.x / s, v.y / s}; }
  Vec2& operator+=(Vec2 v) {
    x += v.x;
    y += v.y;
    return *this;
  }

  friend constexpr bool operator==(Vec2, Vec2) = default;
  friend constexpr auto operator<=>(Vec2, Vec2) = default;
};

constexpr double dot(Vec2 u, Vec2 v) { return u.x * v.x + u.y * v.y; }
constexpr double norm2(Vec2 v) { return dot(v, v); }
inline double norm(Vec2 v) { return std::sqrt(norm2(v)); }
constexpr double dist2(Vec2 u, Vec2 v) { return norm2(u - v); }
inline double dist(Vec2 u, Vec2 v) { return std::sqrt(dist2(u, v)); }

}  // namespace twotier
