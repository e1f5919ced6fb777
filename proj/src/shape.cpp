#include "drop/shape.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "drop/par.hpp"

namespace drop {

BoundaryPolyline::BoundaryPolyline(std::vector<Vec2> points) : pts_(std::move(points)) {
  if (pts_.size() < 3) throw std::invalid_argument("polyline: need at least 3 points");
  length_ = 0.0;
  min_radius_ = pts_[0].norm();
  for (size_t j = 0; j < pts_.size(); ++j) {
    length_ += (pts_[(j + 1) % pts_.size()] - pts_[j]).norm();
    min_radius_ = std::min(min_radius_, pts_[j].norm());
  }
}

double BoundaryPolyline::distance(Vec2 p) const {
  const size_t m = pts_.size();
  // Segments whose angular span stays >= delta away from arg(p) are at least
  // |p| sin(delta) from p, so grow an angular window around arg(p) until the
  // best candidate beats that bound.
  const double r = p.norm();
  if (r < 1e-14) return min_radius_;
  const double ang = std::atan2(p.y, p.x);
  const double da = kTwoPi / static_cast<double>(m);
  const auto jc = static_cast<std::ptrdiff_t>(std::floor((ang < 0 ? ang + kTwoPi : ang) / da));
  double best2 = segment_dist2(p, static_cast<size_t>(jc % static_cast<std::ptrdiff_t>(m)));
  std::ptrdiff_t half = 2;
  while (true) {
    const std::ptrdiff_t lo = jc - half, hi = jc + half;
    for (std::ptrdiff_t j = lo; j <= hi; ++j) {
      const size_t jj = static_cast<size_t>(((j % static_cast<std::ptrdiff_t>(m)) +
                                             static_cast<std::ptrdiff_t>(m)) %
                                            static_cast<std::ptrdiff_t>(m));
      best2 = std::min(best2, segment_dist2(p, jj));
    }
    if (2 * half >= static_cast<std::ptrdiff_t>(m)) break;
    const double margin = static_cast<double>(half) * da;  // angular reach already covered
    if (margin < kPi / 2 && best2 <= r * std::sin(margin) * r * std::sin(margin)) break;
    if (margin >= kPi / 2) break;  // sin bound no longer improves
    half *= 2;
  }
  return std::sqrt(best2);
}

namespace {

bool is_power_of_two(size_t v) { return v != 0 && (v & (v - 1)) == 0; }

}  // namespace

RadialShape::RadialShape(size_t m, std::vector<double> radii, Vec2 center_offset)
    : m_(m), radii_(std::move(radii)), center_offset_(center_offset) {
  if (!is_power_of_two(m_) || m_ < 64)
    throw std::invalid_argument("shape: m must be a power of two, >= 64");
  if (radii_.size() != m_) throw std::invalid_argument("shape: radii size mismatch");
  for (double x : radii_) {
    if (!std::isfinite(x) || x <= 1e-9)
      throw std::invalid_argument("shape: radii must be finite and > 1e-9");
  }
}

RadialShape RadialShape::ball(double R, size_t m) {
  return RadialShape(m, std::vector<double>(m, R));
}

RadialShape RadialShape::perturbed_ball(double R, double amp, int mode_k, size_t m) {
  std::vector<double> radii(m);
  for (size_t i = 0; i < m; ++i) {
    const double th = kTwoPi * static_cast<double>(i) / static_cast<double>(m);
    radii[i] = R * (1.0 + amp * std::cos(mode_k * th));
  }
  return RadialShape(m, std::move(radii));
}

RadialShape RadialShape::offset_ball(double R, double d, size_t m) {
  if (std::abs(d) >= R) throw std::invalid_argument("offset_ball: |d| must be < R");
  std::vector<double> radii(m);
  for (size_t i = 0; i < m; ++i) {
    const double th = kTwoPi * static_cast<double>(i) / static_cast<double>(m);
    // |x| for the ray at angle th meeting the circle |x - (d,0)| = R.
    const double c = d * std::cos(th);
    radii[i] = c + std::sqrt(R * R - d * d + c * c);
  }
  return RadialShape(m, std::move(radii));
}

double RadialShape::min_radius() const {
  return *std::min_element(radii_.begin(), radii_.end());
}

double RadialShape::max_radius() const {
  return *std::max_element(radii_.begin(), radii_.end());
}

std::vector<Vec2> RadialShape::boundary_points() const {
  std::vector<Vec2> pts(m_);
  for (size_t i = 0; i < m_; ++i) pts[i] = boundary_point(i);
  return pts;
}

const BoundaryPolyline& RadialShape::polyline() const {
  if (!polyline_) polyline_.emplace(boundary_points());
  return *polyline_;
}

double RadialShape::radius_derivative(size_t i) const {
  const double dth = dtheta();
  return (radii_[(i + 1) % m_] - radii_[(i + m_ - 1) % m_]) / (2.0 * dth);
}

bool RadialShape::contains(Vec2 p, double tol) const {
  const double r = p.norm();
  if (r == 0.0) return true;
  double ang = std::atan2(p.y, p.x);
  if (ang < 0) ang += kTwoPi;
  return r <= eval_radius(*this, ang) + tol;
}

double eval_radius(const RadialShape& shape, double angle) {
  const double m = static_cast<double>(shape.m());
  double s = angle / kTwoPi * m;
  s -= std::floor(s / m) * m;  // wrap into [0, m)
  const auto i0 = static_cast<size_t>(std::floor(s));
  const double frac = s - static_cast<double>(i0);
  const double a = shape.radius(i0);
  const double b = shape.radius(i0 + 1);
  return a + frac * (b - a);
}

double star_radius(const RadialShape& shape) {
  const auto n = static_cast<std::ptrdiff_t>(shape.m());
  return par::min(n, [&](std::ptrdiff_t i) {
    const double x = shape.radius(static_cast<size_t>(i));
    const double dx = shape.radius_derivative(static_cast<size_t>(i));
    return x * x / std::sqrt(x * x + dx * dx);
  });
}

double annulus_width(const RadialShape& shape) {
  return shape.max_radius() - shape.min_radius();
}

StarCheckResult check_star_shaped(const RadialShape& shape, double r,
                                  size_t ball_samples, size_t segment_samples) {
  if (r < 0) throw std::invalid_argument("check_star_shaped: r must be >= 0");
  // Sample B_r(0): center plus concentric rings.
  std::vector<Vec2> ball_pts;
  ball_pts.push_back({0.0, 0.0});
  if (r > 0) {
    for (size_t q = 1; q <= ball_samples; ++q) {
      const double rad = r * static_cast<double>(q) / static_cast<double>(ball_samples);
      const size_t na = std::max<size_t>(8, 4 * q);
      for (size_t a = 0; a < na; ++a) {
        const double phi = kTwoPi * static_cast<double>(a) / static_cast<double>(na);
        ball_pts.push_back(unit_dir(phi) * rad);
      }
    }
  }

  const auto m = static_cast<std::ptrdiff_t>(shape.m());
  const double tol = 1e-12 + 1e-12 * shape.max_radius();
  std::vector<StarCheckResult> worst(static_cast<size_t>(m));
  par::for_each(m, [&](std::ptrdiff_t i) {
    StarCheckResult res;
    const Vec2 y = shape.boundary_point(static_cast<size_t>(i));
    for (const Vec2& b : ball_pts) {
      for (size_t k = 0; k < segment_samples; ++k) {
        const double t = static_cast<double>(k) / static_cast<double>(segment_samples);
        const Vec2 p = b + (y - b) * t;
        const double rp = p.norm();
        if (rp <= tol) continue;
        double ang = std::atan2(p.y, p.x);
        if (ang < 0) ang += kTwoPi;
        const double margin = rp - eval_radius(shape, ang);
        if (margin > tol && margin > res.depth) {
          res.ok = false;
          res.boundary_index = static_cast<size_t>(i);
          res.ball_point = b;
          res.depth = margin;
        }
      }
    }
    worst[static_cast<size_t>(i)] = res;
  });
  for (const auto& res : worst)
    if (!res.ok) return res;
  return {};
}

bool dilation_condition(const RadialShape& shape, double eps, double a, size_t z_samples) {
  if (!(eps > 0) || !(a > 0)) throw std::invalid_argument("dilation_condition: eps, a must be > 0");
  const double margin = 1e-9 * shape.max_radius();  // compact containment needs strict slack
  const auto m = static_cast<std::ptrdiff_t>(shape.m());
  // z on the full disk |z| <= a*eps: origin plus two shells.
  std::vector<Vec2> zs;
  zs.push_back({0.0, 0.0});
  for (double shell : {0.5, 1.0}) {
    for (size_t q = 0; q < z_samples; ++q) {
      const double phi = kTwoPi * static_cast<double>(q) / static_cast<double>(z_samples);
      zs.push_back(unit_dir(phi) * (a * eps * shell));
    }
  }
  const double ok = par::min(m, [&](std::ptrdiff_t i) {
    const Vec2 y = shape.boundary_point(static_cast<size_t>(i));
    for (const Vec2& z : zs) {
      const Vec2 p = (y - z) * (1.0 / (1.0 + eps));
      const double rp = p.norm();
      if (rp == 0.0) continue;
      double ang = std::atan2(p.y, p.x);
      if (ang < 0) ang += kTwoPi;
      if (rp >= eval_radius(shape, ang) - margin) return 0.0;
    }
    return 1.0;
  });
  return ok > 0.5;
}

namespace {

// The dilated/eroded set is star-shaped, so along each ray the membership
// predicate is monotone; bisect for the boundary radius.
template <class Pred>
double bisect_ray(double lo, double hi, const Pred& inside, int steps) {
  for (int k = 0; k < steps; ++k) {
    const double mid = 0.5 * (lo + hi);
    if (inside(mid))
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

RadialShape dilate(const RadialShape& shape, double radius) {
  if (!(radius >= 0)) throw std::invalid_argument("dilate: radius must be >= 0");
  if (radius == 0.0) return shape;
  const BoundaryPolyline& poly = shape.polyline();
  const size_t m = shape.m();
  std::vector<double> out(m);
  par::for_each(static_cast<std::ptrdiff_t>(m), [&](std::ptrdiff_t i) {
    const double th = shape.theta(static_cast<size_t>(i));
    const Vec2 dir = unit_dir(th);
    auto inside = [&](double rho) {
      const Vec2 p = dir * rho;
      if (shape.contains(p)) return true;
      return poly.distance(p) <= radius;
    };
    const double lo = eval_radius(shape, th);  // always inside the dilation
    const double hi = shape.max_radius() + radius + 1e-12;
    out[static_cast<size_t>(i)] = inside(hi) ? hi : bisect_ray(lo, hi, inside, 48);
  });
  return RadialShape(m, std::move(out), shape.center_offset());
}

RadialShape erode(const RadialShape& shape, double radius) {
  if (!(radius >= 0)) throw std::invalid_argument("erode: radius must be >= 0");
  if (radius == 0.0) return shape;
  const double sr = star_radius(shape);
  if (radius >= sr)
    throw std::invalid_argument("erode: radius must be < star_radius(shape), erosion would empty");
  const BoundaryPolyline& poly = shape.polyline();
  const size_t m = shape.m();
  std::vector<double> out(m);
  par::for_each(static_cast<std::ptrdiff_t>(m), [&](std::ptrdiff_t i) {
    const double th = shape.theta(static_cast<size_t>(i));
    const Vec2 dir = unit_dir(th);
    auto inside = [&](double rho) {
      const Vec2 p = dir * rho;
      if (!shape.contains(p)) return false;
      return poly.distance(p) >= radius;
    };
    out[static_cast<size_t>(i)] = bisect_ray(0.0, eval_radius(shape, th), inside, 48);
  });
  return RadialShape(m, std::move(out), shape.center_offset());
}

RadialShape scale(const RadialShape& shape, double factor) {
  if (!(factor > 0)) throw std::invalid_argument("scale: factor must be > 0");
  std::vector<double> out(shape.radii());
  for (double& x : out) x *= factor;
  return RadialShape(shape.m(), std::move(out), shape.center_offset() * factor);
}

RadialShape translate(const RadialShape& shape, Vec2 z) {
  const size_t m = shape.m();
  if (!shape.contains(z * -1.0, -1e-9 * shape.min_radius()))
    throw std::invalid_argument("translate: origin exits domain");
  std::vector<double> out(m);
  // Intersect each ray from the new origin with the shifted boundary polyline.
  const std::vector<Vec2> pts = shape.boundary_points();
  auto cross = [](Vec2 u, Vec2 v) { return u.x * v.y - u.y * v.x; };
  bool all_hit = true;
  par::for_each(static_cast<std::ptrdiff_t>(m), [&](std::ptrdiff_t i) {
    const Vec2 d = unit_dir(shape.theta(static_cast<size_t>(i)));
    double best = -1.0;
    for (size_t j = 0; j < m; ++j) {
      const Vec2 a = pts[j] + z;
      const Vec2 e = (pts[(j + 1) % m] + z) - a;
      const double det = -cross(e, d);  // [e, -d] system for a + t e = rho d
      if (std::abs(det) < 1e-16) continue;
      const double t = cross(a, d) / det;
      const double rho = -cross(e, a) / det;
      if (t >= -1e-12 && t <= 1.0 + 1e-12 && rho > 0.0) best = std::max(best, rho);
    }
    if (best <= 0.0) all_hit = false;
    out[static_cast<size_t>(i)] = best;
  });
  if (!all_hit) throw std::invalid_argument("translate: origin exits domain");
  return RadialShape(m, std::move(out), shape.center_offset() + z);
}

}  // namespace drop
