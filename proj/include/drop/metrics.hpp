#pragma once

#include "drop/shape.hpp"

namespace drop {

/// Equivalence constants between dist~^2 and the angular L2 distance on
/// S_{r,R}:  lower * integral(d_theta^2) <= dist~^2 <= upper * integral(d_theta^2).
struct MetricBracket {
  double lower_const = 0.0;  // r^N / (2R)
  double upper_const = 0.0;  // R^{N-1} / 2
  /// Chain constant C = lower/upper for the square-triangle inequality
  /// (C/n) dist~^2(end points) <= sum of step dist~^2 along a path of n steps.
  double chain_const() const { return lower_const / upper_const; }
};

/// Hausdorff distance between the boundary polylines (max over samples of the
/// distance to the other polyline).  For star-shaped sets this dominates the
/// set Hausdorff distance.
double hausdorff(const RadialShape& a, const RadialShape& b);

/// Hausdorff distance between the filled sets.
double hausdorff_sets(const RadialShape& a, const RadialShape& b);

/// d_theta(a, b) = |X_a(theta) - X_b(theta)|.
double directional_distance(const RadialShape& a, const RadialShape& b, double theta);

/// dist~^2(base, other) = integral over the symmetric difference of the
/// Euclidean distance to the boundary of `base`.  Asymmetric: the first
/// argument supplies the boundary in the integrand.
double pseudo_dist_sq(const RadialShape& base, const RadialShape& other);

/// integral over S^1 of d_theta(a,b)^2.
double dtheta_l2_sq(const RadialShape& a, const RadialShape& b);

/// Bracket constants for the class S_{r,R} in dimension N (default 2).
MetricBracket metric_bracket(double r, double R, int N = 2);

double area(const RadialShape& shape);
double symm_diff_area(const RadialShape& a, const RadialShape& b);

/// Length of the boundary polyline (perimeter estimate).
double boundary_length(const RadialShape& shape);

/// Best-fit ball of fixed radius: center minimizing the boundary Hausdorff
/// distance to the circle, found by Nelder-Mead from the area centroid.
struct BallFit {
  Vec2 center;
  double hausdorff = 0.0;
};
BallFit fit_ball(const RadialShape& shape, double radius);

}  // namespace drop
