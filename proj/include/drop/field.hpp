#pragma once

#include <vector>

#include "drop/shape.hpp"
#include "drop/sparse.hpp"

namespace drop {

/// Height profile over a wetted set: u = lambda * w with -Delta w = 1 on the
/// shape, w = 0 on the boundary, and lambda = V / integral(w) so that the
/// profile carries volume V.
struct DropField {
  RadialShape shape;
  size_t n_s = 0;
  /// Unit-source solution on the mapped grid.  Node 0 is the pole; ring
  /// i in 1..n_s, angle j gives node 1 + (i-1)*m + j.  Ring n_s is the
  /// boundary (identically zero).
  std::vector<double> w;
  double w_integral = 0.0;
  double lambda = 0.0;
  double volume = 0.0;
  double dirichlet_energy = 0.0;            // integral |Du|^2
  std::vector<double> boundary_gradient;    // |Du| per angular sample
  double energy = 0.0;                      // lambda * V + area

  double w_at(size_t i, size_t j) const {
    const size_t m = shape.m();
    return i == 0 ? w[0] : w[1 + (i - 1) * m + (j % m)];
  }
  /// Height profile value u = lambda * w at grid node (i, j).
  double u_at(size_t i, size_t j) const { return lambda * w_at(i, j); }
};

/// Second-order solve of -Delta w = 1, w = 0 on the boundary, on the
/// boundary-fitted grid (s, theta) -> (s X(theta) cos theta, s X(theta) sin theta),
/// s in [0,1].  P1 elements on the mapped triangulation; the pole is the
/// shared apex of the innermost triangle fan.  The linear system is solved to
/// relative residual 1e-10 (throws with a residual report otherwise).
/// Reuses the mesh topology between calls with the same (n_s, m) and
/// warm-starts from the previous solution.
class FieldSolver {
 public:
  FieldSolver(size_t n_s, size_t m);

  DropField solve(const RadialShape& shape, double V);

  /// Unit-source solve only: fills w and the integral, no profile fields.
  void solve_unit_source(const RadialShape& shape, std::vector<double>& w, double& integral);

  size_t n_s() const { return n_s_; }
  size_t m() const { return m_; }
  int last_iterations() const { return last_iterations_; }

 private:
  void build_topology();

  size_t n_s_, m_, n_unknown_ = 0, n_nodes_ = 0;
  std::vector<size_t> ring_m_;      // angular nodes per ring (coarsened toward the pole)
  std::vector<size_t> ring_offset_; // first node id of each ring
  std::vector<int> tri_;            // 3 node ids per triangle
  CsrMatrix A_;                     // pattern fixed, values rewritten per solve
  std::vector<int> slot_;           // triplet slot in A_.val per (triangle, k, l); -1 = dropped
  std::vector<double> warm_;        // previous solution as the next initial guess
  int last_iterations_ = 0;
};

/// One-shot wrappers (n_s >= 32).
DropField drop_profile(const RadialShape& shape, double V, size_t n_s = 64);
double lagrange_multiplier(const RadialShape& shape, double V, size_t n_s = 64);
/// J(shape) = lambda * V + area.
double energy(const RadialShape& shape, double V, size_t n_s = 64);

/// |S^{N-1}|, the surface measure of the unit sphere in R^N.
double sphere_area(int N);

/// Closed forms for balls: multiplier, contact angle and energy of the
/// volume-V profile over B_R in dimension N.
double ball_lambda(double R, double V, int N = 2);
double ball_boundary_gradient(double R, double V, int N = 2);
double ball_energy(double R, double V, int N = 2);

/// Radius at which the ball profile has unit contact angle,
/// r* = (N (N+2) V / |S^{N-1}|)^{1/(N+1)}; also the minimizer of the ball
/// energy.  The multiplier there is lambda* = N / r*.
double equilibrium_radius(double V, int N = 2);
double equilibrium_lambda(double V, int N = 2);

/// Explicit admissible reflection radius C_N V^{1/(N+1)} with
/// C_N = 5^{-(N+2)/(N+1)} (N (N+2) / |S^{N-1}|)^{1/(N+1)}.
double rho_bound(double V, int N = 2);
/// Stricter variant (1/10) V^{1/(N+1)}.
double rho_bound_strict(double V, int N = 2);

/// Golden-section minimization of a unimodal function on [lo, hi].
template <class F>
double golden_section_min(F&& f, double lo, double hi, double tol) {
  const double gr = 0.6180339887498949;
  double a = lo, b = hi;
  double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
  double f1 = f(x1), f2 = f(x2);
  while (b - a > tol) {
    if (f1 < f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - gr * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + gr * (b - a);
      f2 = f(x2);
    }
  }
  return 0.5 * (a + b);
}

}  // namespace drop
