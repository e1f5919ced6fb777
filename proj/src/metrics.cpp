#include "drop/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "drop/par.hpp"

namespace drop {

namespace {

// All two-shape quadratures run on the angular grid of the finer shape.
size_t common_m(const RadialShape& a, const RadialShape& b) { return std::max(a.m(), b.m()); }

}  // namespace

double hausdorff(const RadialShape& a, const RadialShape& b) {
  const BoundaryPolyline& pa = a.polyline();
  const BoundaryPolyline& pb = b.polyline();
  const double ab = par::max(static_cast<std::ptrdiff_t>(a.m()), [&](std::ptrdiff_t i) {
    return pb.distance(a.boundary_point(static_cast<size_t>(i)));
  });
  const double ba = par::max(static_cast<std::ptrdiff_t>(b.m()), [&](std::ptrdiff_t i) {
    return pa.distance(b.boundary_point(static_cast<size_t>(i)));
  });
  return std::max(ab, ba);
}

double hausdorff_sets(const RadialShape& a, const RadialShape& b) {
  // For star-shaped sets sup_{x in A} d(x, B) is attained on the boundary.
  const BoundaryPolyline& pa = a.polyline();
  const BoundaryPolyline& pb = b.polyline();
  const double ab = par::max(static_cast<std::ptrdiff_t>(a.m()), [&](std::ptrdiff_t i) {
    const Vec2 p = a.boundary_point(static_cast<size_t>(i));
    return b.contains(p) ? 0.0 : pb.distance(p);
  });
  const double ba = par::max(static_cast<std::ptrdiff_t>(b.m()), [&](std::ptrdiff_t i) {
    const Vec2 p = b.boundary_point(static_cast<size_t>(i));
    return a.contains(p) ? 0.0 : pa.distance(p);
  });
  return std::max(ab, ba);
}

double directional_distance(const RadialShape& a, const RadialShape& b, double theta) {
  return std::abs(eval_radius(a, theta) - eval_radius(b, theta));
}

double pseudo_dist_sq(const RadialShape& base, const RadialShape& other) {
  const size_t m = common_m(base, other);
  const double dth = kTwoPi / static_cast<double>(m);
  const BoundaryPolyline& poly = base.polyline();
  // Per angle: integrate d(rho e_theta, boundary of base) * rho over rho
  // between the two radii; composite Simpson per column.
  constexpr int kIntervals = 16;
  return par::sum(static_cast<std::ptrdiff_t>(m), [&](std::ptrdiff_t i) {
    const double th = dth * static_cast<double>(i);
    const double ra = eval_radius(base, th);
    const double rb = eval_radius(other, th);
    const double lo = std::min(ra, rb), hi = std::max(ra, rb);
    if (hi - lo < 1e-15) return 0.0;
    const Vec2 dir = unit_dir(th);
    auto f = [&](double rho) { return poly.distance(dir * rho) * rho; };
    const double h = (hi - lo) / (2.0 * kIntervals);
    double acc = f(lo) + f(hi);
    for (int k = 1; k < 2 * kIntervals; ++k) acc += (k % 2 ? 4.0 : 2.0) * f(lo + h * k);
    return acc * h / 3.0 * dth;
  });
}

double dtheta_l2_sq(const RadialShape& a, const RadialShape& b) {
  const size_t m = common_m(a, b);
  const double dth = kTwoPi / static_cast<double>(m);
  return par::sum(static_cast<std::ptrdiff_t>(m), [&](std::ptrdiff_t i) {
    const double d = directional_distance(a, b, dth * static_cast<double>(i));
    return d * d * dth;
  });
}

MetricBracket metric_bracket(double r, double R, int N) {
  if (!(r > 0) || r > R) throw std::invalid_argument("metric_bracket: need 0 < r <= R");
  MetricBracket mb;
  mb.lower_const = std::pow(r, N) / (2.0 * R);
  mb.upper_const = std::pow(R, N - 1) / 2.0;
  return mb;
}

double area(const RadialShape& shape) {
  const double dth = shape.dtheta();
  return par::sum(static_cast<std::ptrdiff_t>(shape.m()), [&](std::ptrdiff_t i) {
    const double x = shape.radius(static_cast<size_t>(i));
    return 0.5 * x * x * dth;
  });
}

double symm_diff_area(const RadialShape& a, const RadialShape& b) {
  const size_t m = common_m(a, b);
  const double dth = kTwoPi / static_cast<double>(m);
  return par::sum(static_cast<std::ptrdiff_t>(m), [&](std::ptrdiff_t i) {
    const double th = dth * static_cast<double>(i);
    const double ra = eval_radius(a, th);
    const double rb = eval_radius(b, th);
    return 0.5 * std::abs(ra * ra - rb * rb) * dth;
  });
}

double boundary_length(const RadialShape& shape) { return shape.polyline().length(); }

namespace {

// deviation of the boundary samples from the circle |x - c| = radius
double circle_deviation(const RadialShape& shape, Vec2 c, double radius) {
  double worst = 0.0;
  for (size_t i = 0; i < shape.m(); ++i)
    worst = std::max(worst, std::abs((shape.boundary_point(i) - c).norm() - radius));
  return worst;
}

}  // namespace

BallFit fit_ball(const RadialShape& shape, double radius) {
  // area centroid of the polar region as the starting guess
  const double dth = shape.dtheta();
  Vec2 c0{0.0, 0.0};
  double A = 0.0;
  for (size_t i = 0; i < shape.m(); ++i) {
    const double x = shape.radius(i);
    A += 0.5 * x * x * dth;
    c0 = c0 + unit_dir(shape.theta(i)) * (x * x * x / 3.0 * dth);
  }
  c0 = c0 * (1.0 / A);

  auto f = [&](Vec2 c) { return circle_deviation(shape, c, radius); };

  // Nelder-Mead on the plane
  const double scale = 0.1 * radius;
  Vec2 pts[3] = {c0, c0 + Vec2{scale, 0.0}, c0 + Vec2{0.0, scale}};
  double vals[3] = {f(pts[0]), f(pts[1]), f(pts[2])};
  for (int it = 0; it < 300; ++it) {
    int lo = 0, hi = 0, mid = 0;
    for (int k = 1; k < 3; ++k) {
      if (vals[k] < vals[lo]) lo = k;
      if (vals[k] > vals[hi]) hi = k;
    }
    mid = 3 - lo - hi;
    if (lo == hi) mid = (lo + 1) % 3;
    if ((pts[hi] - pts[lo]).norm() < 1e-12 * radius) break;
    const Vec2 centroid = (pts[lo] + pts[mid]) * 0.5;
    const Vec2 refl = centroid + (centroid - pts[hi]);
    const double fr = f(refl);
    if (fr < vals[lo]) {
      const Vec2 exp_pt = centroid + (centroid - pts[hi]) * 2.0;
      const double fe = f(exp_pt);
      if (fe < fr) {
        pts[hi] = exp_pt;
        vals[hi] = fe;
      } else {
        pts[hi] = refl;
        vals[hi] = fr;
      }
    } else if (fr < vals[mid]) {
      pts[hi] = refl;
      vals[hi] = fr;
    } else {
      const Vec2 con = centroid + (pts[hi] - centroid) * 0.5;
      const double fc = f(con);
      if (fc < vals[hi]) {
        pts[hi] = con;
        vals[hi] = fc;
      } else {
        for (int k = 0; k < 3; ++k) {
          if (k == lo) continue;
          pts[k] = pts[lo] + (pts[k] - pts[lo]) * 0.5;
          vals[k] = f(pts[k]);
        }
      }
    }
  }
  int lo = 0;
  for (int k = 1; k < 3; ++k)
    if (vals[k] < vals[lo]) lo = k;

  BallFit fit;
  fit.center = pts[lo];
  // symmetric boundary Hausdorff against the circle
  double worst = vals[lo];
  const BoundaryPolyline& poly = shape.polyline();
  const size_t nc = 2 * shape.m();
  for (size_t k = 0; k < nc; ++k) {
    const Vec2 z = fit.center + unit_dir(kTwoPi * static_cast<double>(k) / nc) * radius;
    worst = std::max(worst, poly.distance(z));
  }
  fit.hausdorff = worst;
  return fit;
}

}  // namespace drop
