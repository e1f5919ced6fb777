#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace drop {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

struct Vec2 {
  double x = 0.0, y = 0.0;

  Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
  Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
  Vec2 operator*(double a) const { return {a * x, a * y}; }
  double dot(Vec2 o) const { return x * o.x + y * o.y; }
  double norm() const { return std::hypot(x, y); }
  double norm2() const { return x * x + y * y; }
  double angle() const { return std::atan2(y, x); }  // in (-pi, pi]
};

inline Vec2 unit_dir(double theta) { return {std::cos(theta), std::sin(theta)}; }

/// Cone with apex `apex`, opening `half_angle` about unit `axis`:
/// { y : <axis, y - apex> >= cos(half_angle) |y - apex| }.
struct Cone {
  Vec2 apex;
  Vec2 axis;
  double half_angle;

  Cone(Vec2 apex_, Vec2 axis_, double half_angle_)
      : apex(apex_), axis(axis_), half_angle(half_angle_) {
    if (!(half_angle > 0.0 && half_angle < kPi))
      throw std::invalid_argument("cone: half_angle must lie strictly in (0, pi)");
    const double n = axis.norm();
    if (std::abs(n - 1.0) > 1e-12)
      throw std::invalid_argument("cone: axis must be a unit vector");
    axis = axis * (1.0 / n);
  }

  bool contains(Vec2 p) const {
    const Vec2 v = p - apex;
    const double r = v.norm();
    if (r == 0.0) return true;
    return axis.dot(v) >= std::cos(half_angle) * r;
  }
};

/// Squared distance from p to the segment [a, b].
inline double dist2_point_segment(Vec2 p, Vec2 a, Vec2 b) {
  const Vec2 ab = b - a;
  const double len2 = ab.norm2();
  double t = len2 > 0.0 ? (p - a).dot(ab) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  const Vec2 q = a + ab * t;
  return (p - q).norm2();
}

/// Closed boundary polyline through the sample points of a radial shape,
/// with an angular index for pruned nearest-segment queries.
class BoundaryPolyline {
 public:
  explicit BoundaryPolyline(std::vector<Vec2> points);

  size_t size() const { return pts_.size(); }
  const std::vector<Vec2>& points() const { return pts_; }

  /// Exact Euclidean distance from p to the closed polyline.
  double distance(Vec2 p) const;

  /// Total length of the polyline (perimeter estimate of the shape).
  double length() const { return length_; }

 private:
  double segment_dist2(Vec2 p, size_t j) const {
    return dist2_point_segment(p, pts_[j], pts_[(j + 1) % pts_.size()]);
  }

  std::vector<Vec2> pts_;
  double length_ = 0.0;
  double min_radius_ = 0.0;
};

}  // namespace drop
