// Test-only oracles, independent of the library implementation paths they
// check: dense quadratures with brute-force distances, closed-form reference
// solutions, and a portable deterministic RNG.
#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "drop/geometry.hpp"
#include "drop/shape.hpp"

namespace oracle {

// mt19937_64 driven uniforms, identical across standard libraries
inline double u01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  return lo + (hi - lo) * u01(rng);
}

// Fourier description of a random shape, buildable at any resolution.
struct FourierShape {
  double base = 1.0;
  std::vector<double> amp;    // per mode k = 1..K
  std::vector<double> phase;

  drop::RadialShape build(size_t m) const {
    std::vector<double> radii(m, base);
    for (size_t k = 0; k < amp.size(); ++k) {
      for (size_t i = 0; i < m; ++i)
        radii[i] += amp[k] * std::cos((static_cast<double>(k) + 1.0) * drop::kTwoPi *
                                          static_cast<double>(i) / static_cast<double>(m) +
                                      phase[k]);
    }
    return drop::RadialShape(m, std::move(radii));
  }
};

inline FourierShape random_fourier(std::mt19937_64& rng, double r_class, double R_class) {
  FourierShape fs;
  fs.base = uniform(rng, r_class * 1.4, R_class * 0.8);
  const int modes = 2 + static_cast<int>(u01(rng) * 5);
  for (int k = 1; k <= modes; ++k) {
    fs.amp.push_back(fs.base * uniform(rng, 0.0, 0.12) / (1.0 + k));
    fs.phase.push_back(uniform(rng, 0.0, drop::kTwoPi));
  }
  return fs;
}

// Random Fourier-mode shape conditioned to lie in S_{r_class, R_class}.
inline FourierShape random_fourier_in_class(std::mt19937_64& rng, size_t m, double r_class,
                                            double R_class, int max_tries = 200) {
  for (int tries = 0; tries < max_tries; ++tries) {
    const FourierShape fs = random_fourier(rng, r_class, R_class);
    double min_r = fs.base;
    for (double a : fs.amp) min_r -= std::abs(a);
    if (min_r < 1e-6) continue;
    const drop::RadialShape shape = fs.build(m);
    if (drop::star_radius(shape) >= r_class && shape.max_radius() <= R_class) return fs;
  }
  throw std::runtime_error("oracle: failed to draw a shape in the class");
}

inline drop::RadialShape random_shape_in_class(std::mt19937_64& rng, size_t m, double r_class,
                                               double R_class, int max_tries = 200) {
  return random_fourier_in_class(rng, m, r_class, R_class, max_tries).build(m);
}

// Brute-force distance from a point to the boundary polyline (all segments).
inline double dist_to_boundary_bruteforce(const drop::RadialShape& shape, drop::Vec2 p) {
  const size_t m = shape.m();
  double best2 = 1e300;
  for (size_t j = 0; j < m; ++j) {
    best2 = std::min(
        best2, drop::dist2_point_segment(p, shape.boundary_point(j), shape.boundary_point(j + 1)));
  }
  return std::sqrt(best2);
}

// Dense midpoint quadrature of dist~^2 in polar coordinates, brute-force
// distances throughout.  Independent of drop::pseudo_dist_sq.
inline double pseudo_dist_sq_oracle(const drop::RadialShape& base, const drop::RadialShape& other,
                                    size_t n_theta = 512, size_t n_rho = 64) {
  double acc = 0.0;
  const double dth = drop::kTwoPi / static_cast<double>(n_theta);
  for (size_t i = 0; i < n_theta; ++i) {
    const double th = dth * (static_cast<double>(i) + 0.5);
    const double ra = drop::eval_radius(base, th);
    const double rb = drop::eval_radius(other, th);
    const double lo = std::min(ra, rb), hi = std::max(ra, rb);
    const double drho = (hi - lo) / static_cast<double>(n_rho);
    double col = 0.0;
    for (size_t q = 0; q < n_rho; ++q) {
      const double rho = lo + drho * (static_cast<double>(q) + 0.5);
      col += dist_to_boundary_bruteforce(base, drop::unit_dir(th) * rho) * rho * drho;
    }
    acc += col * dth;
  }
  return acc;
}

// adaptive Simpson on [a, b]
template <class F>
double simpson_rec(const F& f, double a, double b, double fa, double fm, double fb, double whole,
                   double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  if (depth <= 0 || std::abs(left + right - whole) < 15.0 * tol)
    return left + right + (left + right - whole) / 15.0;
  return simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

template <class F>
double integrate(const F& f, double a, double b, double tol = 1e-12) {
  const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return simpson_rec(f, a, b, fa, fm, fb, whole, tol, 40);
}

// unit-source solutions with Dirichlet zero boundary
inline double disk_unit_source(double rho_sq, double R = 1.0) { return (R * R - rho_sq) / 4.0; }

inline double ellipse_unit_source(double x, double y, double a = 2.0, double b = 1.0) {
  const double c = (a * a * b * b) / (2.0 * (a * a + b * b));
  return (1.0 - x * x / (a * a) - y * y / (b * b)) * c;
}

inline drop::RadialShape ellipse_shape(double a, double b, size_t m = 256) {
  std::vector<double> radii(m);
  for (size_t i = 0; i < m; ++i) {
    const double th = drop::kTwoPi * static_cast<double>(i) / static_cast<double>(m);
    const double cx = std::cos(th) / a, cy = std::sin(th) / b;
    radii[i] = 1.0 / std::sqrt(cx * cx + cy * cy);
  }
  return drop::RadialShape(m, std::move(radii));
}

}  // namespace oracle
