#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "drop/geometry.hpp"

namespace drop {

/// Star-shaped planar domain encoded by a periodic radial function sampled on
/// a uniform angular grid: radius X_i at theta_i = 2*pi*i/m.  The continuous
/// boundary is the piecewise-linear interpolation of X in theta; the boundary
/// polyline through the sample points is used for Euclidean distances.
class RadialShape {
 public:
  /// m must be a power of two, >= 64; all radii finite and > 1e-9.
  RadialShape(size_t m, std::vector<double> radii, Vec2 center_offset = {});

  static RadialShape ball(double R, size_t m = 256);
  /// X(theta) = R * (1 + amp * cos(k * theta)).
  static RadialShape perturbed_ball(double R, double amp, int mode_k, size_t m = 256);
  /// Disk of radius R centered at (d, 0), represented about the origin (|d| < R).
  static RadialShape offset_ball(double R, double d, size_t m = 256);

  size_t m() const { return m_; }
  const std::vector<double>& radii() const { return radii_; }
  double radius(size_t i) const { return radii_[i % m_]; }
  double theta(size_t i) const { return kTwoPi * static_cast<double>(i) / static_cast<double>(m_); }
  double dtheta() const { return kTwoPi / static_cast<double>(m_); }
  Vec2 center_offset() const { return center_offset_; }

  double min_radius() const;
  double max_radius() const;

  Vec2 boundary_point(size_t i) const { return unit_dir(theta(i)) * radii_[i % m_]; }
  std::vector<Vec2> boundary_points() const;
  const BoundaryPolyline& polyline() const;

  /// Centered finite difference of X in theta at sample i.
  double radius_derivative(size_t i) const;

  /// Point membership in the closed set {rho <= X(theta)} with tolerance tol.
  bool contains(Vec2 p, double tol = 0.0) const;

 private:
  size_t m_;
  std::vector<double> radii_;
  Vec2 center_offset_;
  mutable std::optional<BoundaryPolyline> polyline_;  // built lazily
};

/// Piecewise-linear (in theta) interpolation of the radial function;
/// 2*pi-periodic and exact at the grid angles.
double eval_radius(const RadialShape& shape, double angle);

/// Largest r >= 0 at which the tangent-line criterion
/// X_i^2 / sqrt(X_i^2 + X_i'^2) >= r holds at every sample.  For Lipschitz
/// radial graphs this equals the radius of strong star-shapedness.
double star_radius(const RadialShape& shape);

struct StarCheckResult {
  bool ok = true;
  size_t boundary_index = 0;  // first violating boundary sample
  Vec2 ball_point;            // witness point of B_r(0)
  double depth = 0.0;         // how far the segment leaves the shape
};

/// Brute-force definition check: every segment from a sampled point of B_r(0)
/// to a sampled boundary point must stay in the closed shape.  Spatial oracle
/// for star_radius.
StarCheckResult check_star_shaped(const RadialShape& shape, double r,
                                  size_t ball_samples = 12, size_t segment_samples = 48);

/// Dilation characterization of strong star-shapedness: true iff
/// shape c (1+eps)*shape + z for all sampled |z| <= a*eps (strict margin).
bool dilation_condition(const RadialShape& shape, double eps, double a,
                        size_t z_samples = 64);

/// max_i X_i - min_i X_i.
double annulus_width(const RadialShape& shape);

/// Minkowski dilation by a closed disk of the given radius.
RadialShape dilate(const RadialShape& shape, double radius);
/// Minkowski erosion by a closed disk; requires radius < star_radius(shape).
RadialShape erode(const RadialShape& shape, double radius);

/// Exact scaling of the radii; factor > 0.
RadialShape scale(const RadialShape& shape, double factor);
/// Shift the boundary by z and re-solve the radial function about the origin.
/// Fails if the origin is not interior to the shifted shape.
RadialShape translate(const RadialShape& shape, Vec2 z);

}  // namespace drop
