#include "drop/reflection.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "drop/par.hpp"

namespace drop {

namespace {

// Outside-margin of p relative to the radial graph: positive means outside.
inline double outside_margin(const RadialShape& shape, Vec2 p, double tol) {
  const double r = p.norm();
  if (r == 0.0) return -tol;
  double ang = std::atan2(p.y, p.x);
  if (ang < 0) ang += kTwoPi;
  return r - eval_radius(shape, ang) - tol;
}

struct CapSample {
  Vec2 y;
  double proj;   // y . nu
  Vec2 perp;     // y - proj * nu
};

// Boundary samples: polyline vertices plus edge subdivisions sized by tol.
std::vector<Vec2> boundary_samples(const RadialShape& shape, double tol) {
  const size_t m = shape.m();
  const double edge = kTwoPi / static_cast<double>(m) * shape.max_radius();
  const int nsub = static_cast<int>(std::clamp(edge / (8.0 * tol), 2.0, 32.0));
  std::vector<Vec2> out;
  out.reserve(m * static_cast<size_t>(nsub));
  for (size_t j = 0; j < m; ++j) {
    const Vec2 a = shape.boundary_point(j);
    const Vec2 b = shape.boundary_point(j + 1);
    for (int k = 0; k < nsub; ++k) {
      const double t = static_cast<double>(k) / static_cast<double>(nsub);
      out.push_back(a + (b - a) * t);
    }
  }
  return out;
}

}  // namespace

double s_min(const RadialShape& shape, Vec2 nu, double rho, double tol) {
  if (!(tol > 0)) tol = 1e-3 * shape.min_radius();
  if (rho > shape.min_radius() + 1e-12 * shape.max_radius())
    throw std::invalid_argument("s_min: rho ball not inside shape");
  const double nn = nu.norm();
  if (nn == 0.0) throw std::invalid_argument("s_min: nu must be nonzero");
  nu = nu * (1.0 / nn);

  const std::vector<Vec2> samples = boundary_samples(shape, tol);

  // s_min = sup over boundary samples y of the outermost plane offset at which
  // the reflected point y + 2(t - y.nu) nu leaves the shape.  Each sample is
  // scanned from t = y.nu downward on its own grid and the outermost violation
  // is refined by bisection; violation slivers narrower than the scan grid are
  // below the resolution this check claims.
  constexpr int kScan = 96;
  double result = 0.0;
  for (const Vec2& y : samples) {
    const double p = y.dot(nu);
    if (p <= result) continue;  // cannot improve the sup
    const Vec2 perp = y - nu * p;
    auto violated = [&](double t) {
      const Vec2 refl = perp + nu * (2.0 * t - p);
      return outside_margin(shape, refl, tol) > 0.0;
    };
    double hi = p;  // reflected point equals y itself: on the boundary, inside
    bool found = false;
    double lo = 0.0;
    for (int k = kScan - 1; k >= 0; --k) {
      const double t = p * static_cast<double>(k) / static_cast<double>(kScan);
      if (t <= result) break;  // cannot improve the sup from here down
      if (violated(t)) {
        lo = t;
        found = true;
        break;
      }
      hi = t;
    }
    if (!found) continue;
    // refine the crossing between lo (violated) and hi (not violated)
    for (int it = 0; it < 50 && hi - lo > 0.25 * tol; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (violated(mid))
        lo = mid;
      else
        hi = mid;
    }
    result = std::max(result, 0.5 * (lo + hi));
  }
  return result;
}

ReflectionReport check_rho_reflection(const RadialShape& shape, double rho,
                                      size_t directions, double tol) {
  if (!(rho > 0)) throw std::invalid_argument("check_rho_reflection: rho must be > 0");
  if (!(tol > 0)) tol = 1e-3 * shape.min_radius();
  ReflectionReport report;
  report.directions.resize(directions);
  report.s_min.resize(directions);
  for (size_t d = 0; d < directions; ++d)
    report.directions[d] = unit_dir(kTwoPi * static_cast<double>(d) / static_cast<double>(directions));
  par::for_each(static_cast<std::ptrdiff_t>(directions), [&](std::ptrdiff_t d) {
    report.s_min[static_cast<size_t>(d)] =
        s_min(shape, report.directions[static_cast<size_t>(d)], 0.0, tol);
  });
  report.rho_reflection_radius = *std::max_element(report.s_min.begin(), report.s_min.end());
  report.ball_radius_check = rho <= shape.min_radius() + 1e-12 * shape.max_radius();
  report.pass = report.ball_radius_check && report.rho_reflection_radius <= rho;
  return report;
}

double implied_star_radius_from_reflection(const RadialShape& shape, double rho) {
  const double rmin = shape.min_radius();
  if (rho >= rmin)
    throw std::invalid_argument("implied_star_radius_from_reflection: rho >= min radius");
  return std::sqrt(rmin * rmin - rho * rho);
}

bool sufficient_reflection_condition(const RadialShape& shape, double rho) {
  if (rho > shape.min_radius())
    throw std::invalid_argument("sufficient_reflection_condition: rho ball not inside shape");
  const size_t m = shape.m();
  const double rmax = shape.max_radius();
  const double rmin = shape.min_radius();
  if (rmax * rmax - rmin * rmin > rho * rho) return false;  // oscillation condition
  for (size_t i = 0; i < m; ++i) {
    const double x = shape.radius(i);
    const double dx = shape.radius_derivative(i);
    const double nd = x * x / std::sqrt(x * x + dx * dx);  // |<n, x>| for the radial graph
    if (nd * nd < x * x - rho * rho / 5.0) return false;
  }
  return true;
}

RecenterResult recenter_search(const RadialShape& shape, double rho, size_t directions,
                               int grid, double span) {
  if (span <= 0) span = rho;
  auto sup_for = [&](Vec2 z) {
    const RadialShape moved = translate(shape, z * -1.0);
    double sup = 0.0;
    for (size_t d = 0; d < directions; ++d) {
      const Vec2 nu = unit_dir(kTwoPi * static_cast<double>(d) / static_cast<double>(directions));
      sup = std::max(sup, s_min(moved, nu, 0.0, 1e-3 * moved.min_radius()));
    }
    return sup;
  };
  RecenterResult best{{0.0, 0.0}, sup_for({0.0, 0.0})};
  for (int ix = -grid; ix <= grid; ++ix) {
    for (int iy = -grid; iy <= grid; ++iy) {
      if (ix == 0 && iy == 0) continue;
      const Vec2 z{span * static_cast<double>(ix) / grid, span * static_cast<double>(iy) / grid};
      if (!shape.contains(z * -1.0, -0.05 * shape.min_radius())) continue;
      const double s = sup_for(z);
      if (s < best.sup_s_min) best = {z, s};
    }
  }
  return best;
}

}  // namespace drop
