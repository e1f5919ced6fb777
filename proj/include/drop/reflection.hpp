#pragma once

#include <vector>

#include "drop/shape.hpp"

namespace drop {

/// Per-direction reflection diagnostics: for each sampled direction nu,
/// s_min(nu) is the smallest plane offset s such that the reflection of the
/// far cap {x . nu > t} across the plane {x . nu = t} stays inside the shape
/// for every t >= s.
struct ReflectionReport {
  std::vector<Vec2> directions;
  std::vector<double> s_min;
  double rho_reflection_radius = 0.0;  // sup over directions of s_min
  bool ball_radius_check = false;      // B_rho(0) inside the shape
  bool pass = false;                   // sup <= rho and ball check
};

/// s_min for a single direction.  The containment predicate is monotone in s;
/// the result is resolved to `tol` by scanning plane offsets from the outside
/// in and bisecting at the outermost violation.  Requires B_rho(0) inside the
/// shape.  Membership of reflected boundary samples is tested against the
/// radial graph with tolerance `tol`.
double s_min(const RadialShape& shape, Vec2 nu, double rho, double tol);

/// rho-reflection check over a uniform direction grid (default 256).
ReflectionReport check_rho_reflection(const RadialShape& shape, double rho,
                                      size_t directions = 256, double tol = -1.0);

/// sqrt(min_i X_i^2 - rho^2): the strong star-shapedness radius implied by
/// rho-reflection.  Requires rho < min radius.
double implied_star_radius_from_reflection(const RadialShape& shape, double rho);

/// Discrete check of the normal-deviation and oscillation conditions
/// |<n(x), x>|^2 >= |x|^2 - rho^2/5 and sup |x|^2 - |y|^2 <= rho^2,
/// which together are sufficient for rho-reflection.
bool sufficient_reflection_condition(const RadialShape& shape, double rho);

/// Diagnostic (off by default in the CLI): coarse search over centers z
/// minimizing sup_nu s_min(shape - z).  Returns the best offset found and the
/// corresponding sup.
struct RecenterResult {
  Vec2 offset;
  double sup_s_min = 0.0;
};
RecenterResult recenter_search(const RadialShape& shape, double rho, size_t directions = 64,
                               int grid = 5, double span = -1.0);

}  // namespace drop
