#include "drop/field.hpp"

#include <cmath>
#include <stdexcept>

#include "drop/metrics.hpp"
#include "drop/par.hpp"

namespace drop {

namespace {

size_t pow2_floor(double v) {
  size_t p = 1;
  while (2 * p <= static_cast<size_t>(v)) p *= 2;
  return p;
}

}  // namespace

FieldSolver::FieldSolver(size_t n_s, size_t m) : n_s_(n_s), m_(m) {
  if (n_s_ < 32) throw std::invalid_argument("field: n_s must be >= 32");
  build_topology();
}

void FieldSolver::build_topology() {
  const size_t m = m_, n_s = n_s_;

  // Angular resolution per ring: coarsened toward the pole so that mapped
  // cells keep bounded aspect ratio (the fan of skinny wedges at the center
  // would otherwise dominate the conditioning of the system).  Ring counts
  // are powers of two, change by at most a factor 2 between rings, and the
  // outer three rings always carry the full grid for the boundary stencils.
  ring_m_.assign(n_s + 1, m);
  for (size_t i = 1; i <= n_s; ++i) {
    const size_t target = pow2_floor(std::max(8.0, 4.0 * kPi * static_cast<double>(i)));
    ring_m_[i] = std::min(m, std::max<size_t>(8, target));
  }
  for (size_t i = n_s; i >= n_s - 2 && i >= 1; --i) ring_m_[i] = m;
  for (size_t i = n_s; i >= 2; --i) ring_m_[i - 1] = std::max(ring_m_[i - 1], ring_m_[i] / 2);

  ring_offset_.assign(n_s + 1, 1);
  for (size_t i = 2; i <= n_s; ++i) ring_offset_[i] = ring_offset_[i - 1] + ring_m_[i - 1];
  n_unknown_ = ring_offset_[n_s];  // pole plus rings 1..n_s-1
  n_nodes_ = ring_offset_[n_s] + ring_m_[n_s];

  auto node = [&](size_t i, size_t k) -> int {
    return i == 0 ? 0 : static_cast<int>(ring_offset_[i] + (k % ring_m_[i]));
  };

  tri_.clear();
  for (size_t k = 0; k < ring_m_[1]; ++k) {
    tri_.push_back(node(0, 0));
    tri_.push_back(node(1, k));
    tri_.push_back(node(1, k + 1));
  }
  for (size_t i = 1; i < n_s; ++i) {
    if (ring_m_[i + 1] == ring_m_[i]) {
      for (size_t k = 0; k < ring_m_[i]; ++k) {
        tri_.push_back(node(i, k));
        tri_.push_back(node(i + 1, k));
        tri_.push_back(node(i + 1, k + 1));
        tri_.push_back(node(i, k));
        tri_.push_back(node(i + 1, k + 1));
        tri_.push_back(node(i, k + 1));
      }
    } else {
      // conforming 2:1 transition: coarse ring i, fine ring i+1
      for (size_t k = 0; k < ring_m_[i]; ++k) {
        tri_.push_back(node(i, k));
        tri_.push_back(node(i + 1, 2 * k));
        tri_.push_back(node(i + 1, 2 * k + 1));
        tri_.push_back(node(i, k));
        tri_.push_back(node(i + 1, 2 * k + 1));
        tri_.push_back(node(i, k + 1));
        tri_.push_back(node(i, k + 1));
        tri_.push_back(node(i + 1, 2 * k + 1));
        tri_.push_back(node(i + 1, 2 * k + 2));
      }
    }
  }

  // CSR pattern over the unknowns; boundary-ring couplings are dropped since
  // the Dirichlet values vanish.
  const size_t ntri = tri_.size() / 3;
  std::vector<int> rows, cols;
  std::vector<double> vals;
  rows.reserve(9 * ntri);
  cols.reserve(9 * ntri);
  for (size_t t = 0; t < ntri; ++t) {
    for (int k = 0; k < 3; ++k) {
      for (int l = 0; l < 3; ++l) {
        const int rk = tri_[3 * t + static_cast<size_t>(k)];
        const int cl = tri_[3 * t + static_cast<size_t>(l)];
        if (rk < static_cast<int>(n_unknown_) && cl < static_cast<int>(n_unknown_)) {
          rows.push_back(rk);
          cols.push_back(cl);
          vals.push_back(0.0);
        }
      }
    }
  }
  A_ = assemble_csr(n_unknown_, rows, cols, vals);

  slot_.assign(9 * ntri, -1);
  for (size_t t = 0; t < ntri; ++t) {
    for (int k = 0; k < 3; ++k) {
      for (int l = 0; l < 3; ++l) {
        const int rk = tri_[3 * t + static_cast<size_t>(k)];
        const int cl = tri_[3 * t + static_cast<size_t>(l)];
        if (rk >= static_cast<int>(n_unknown_) || cl >= static_cast<int>(n_unknown_)) continue;
        for (int s = A_.row_ptr[static_cast<size_t>(rk)];
             s < A_.row_ptr[static_cast<size_t>(rk) + 1]; ++s) {
          if (A_.col[static_cast<size_t>(s)] == cl) {
            slot_[9 * t + static_cast<size_t>(3 * k + l)] = s;
            break;
          }
        }
      }
    }
  }
}

void FieldSolver::solve_unit_source(const RadialShape& shape, std::vector<double>& w,
                                    double& integral) {
  if (shape.m() != m_) throw std::invalid_argument("field: shape resolution mismatch");
  const size_t m = m_, n_s = n_s_;

  // node coordinates under the boundary-fitted map; coarse-ring angles land
  // exactly on the fine angular grid (power-of-two strides)
  std::vector<Vec2> pos(n_nodes_);
  pos[0] = {0.0, 0.0};
  for (size_t i = 1; i <= n_s; ++i) {
    const double s = static_cast<double>(i) / static_cast<double>(n_s);
    const size_t stride = m / ring_m_[i];
    for (size_t k = 0; k < ring_m_[i]; ++k) {
      const size_t j = k * stride;
      pos[ring_offset_[i] + k] = unit_dir(shape.theta(j)) * (s * shape.radius(j));
    }
  }

  std::fill(A_.val.begin(), A_.val.end(), 0.0);
  std::vector<double> rhs(n_unknown_, 0.0);
  const size_t ntri = tri_.size() / 3;
  for (size_t t = 0; t < ntri; ++t) {
    const Vec2 p1 = pos[static_cast<size_t>(tri_[3 * t])];
    const Vec2 p2 = pos[static_cast<size_t>(tri_[3 * t + 1])];
    const Vec2 p3 = pos[static_cast<size_t>(tri_[3 * t + 2])];
    const double area2 = (p2.x - p1.x) * (p3.y - p1.y) - (p2.y - p1.y) * (p3.x - p1.x);
    if (!(area2 > 0)) throw std::runtime_error("field: degenerate mapped triangle");
    const Vec2 edges[3] = {p3 - p2, p1 - p3, p2 - p1};  // edge opposite each vertex
    for (int k = 0; k < 3; ++k) {
      const int nk = tri_[3 * t + static_cast<size_t>(k)];
      if (nk < static_cast<int>(n_unknown_))
        rhs[static_cast<size_t>(nk)] += area2 / 6.0;  // area/3 with unit source
      for (int l = 0; l < 3; ++l) {
        const int s = slot_[9 * t + static_cast<size_t>(3 * k + l)];
        if (s >= 0) A_.val[static_cast<size_t>(s)] += edges[k].dot(edges[l]) / (2.0 * area2);
      }
    }
  }

  if (warm_.size() != n_unknown_) warm_.assign(n_unknown_, 0.0);
  const PcgResult pr = pcg_ssor(A_, rhs, warm_, 1e-10, 20000, 1.9);
  last_iterations_ = pr.iterations;
  if (!pr.converged)
    throw std::runtime_error("field: linear solve failed to converge, relative residual " +
                             std::to_string(pr.relative_residual));

  // mesh solution values, boundary ring zero
  std::vector<double> wn(n_nodes_, 0.0);
  for (size_t i = 0; i < n_unknown_; ++i) wn[i] = warm_[i];

  integral = par::sum(static_cast<std::ptrdiff_t>(ntri), [&](std::ptrdiff_t t) {
    const Vec2 p1 = pos[static_cast<size_t>(tri_[3 * t])];
    const Vec2 p2 = pos[static_cast<size_t>(tri_[3 * t + 1])];
    const Vec2 p3 = pos[static_cast<size_t>(tri_[3 * t + 2])];
    const double area = 0.5 * ((p2.x - p1.x) * (p3.y - p1.y) - (p2.y - p1.y) * (p3.x - p1.x));
    const double wsum = wn[static_cast<size_t>(tri_[3 * t])] +
                        wn[static_cast<size_t>(tri_[3 * t + 1])] +
                        wn[static_cast<size_t>(tri_[3 * t + 2])];
    return area * wsum / 3.0;
  });

  // expose on the full (pole + n_s * m) grid, interpolating coarse rings
  w.assign(1 + n_s * m, 0.0);
  w[0] = wn[0];
  for (size_t i = 1; i <= n_s; ++i) {
    const size_t mi = ring_m_[i];
    const size_t stride = m / mi;
    for (size_t j = 0; j < m; ++j) {
      const size_t c = j / stride;
      const size_t rem = j % stride;
      const double a = wn[ring_offset_[i] + c];
      const double b = wn[ring_offset_[i] + ((c + 1) % mi)];
      const double frac = static_cast<double>(rem) / static_cast<double>(stride);
      w[1 + (i - 1) * m + j] = a + frac * (b - a);
    }
  }
}

DropField FieldSolver::solve(const RadialShape& shape, double V) {
  if (!(V > 0)) throw std::invalid_argument("field: V must be > 0");
  DropField out{shape};
  out.n_s = n_s_;
  solve_unit_source(shape, out.w, out.w_integral);
  if (!(out.w_integral > 0)) throw std::runtime_error("field: nonpositive unit-source integral");
  out.lambda = V / out.w_integral;
  out.volume = V;
  out.dirichlet_energy = out.lambda * V;  // Galerkin identity: a(w,w) = integral(w)
  out.energy = out.lambda * V + area(shape);

  // contact angle |Du| per angular sample: one-sided second-order derivative
  // of u along the mapped ray, times |grad s| on the boundary
  const size_t m = m_;
  const double ds = 1.0 / static_cast<double>(n_s_);
  out.boundary_gradient.resize(m);
  for (size_t j = 0; j < m; ++j) {
    const double w1 = out.w_at(n_s_ - 1, j);
    const double w2 = out.w_at(n_s_ - 2, j);
    const double ws = (w2 - 4.0 * w1) / (2.0 * ds);  // boundary value is zero
    const double X = shape.radius(j);
    const double Xp = shape.radius_derivative(j);
    const double grad_s = std::sqrt(X * X + Xp * Xp) / (X * X);
    out.boundary_gradient[j] = out.lambda * std::abs(ws) * grad_s;
  }
  return out;
}

DropField drop_profile(const RadialShape& shape, double V, size_t n_s) {
  FieldSolver solver(n_s, shape.m());
  return solver.solve(shape, V);
}

double lagrange_multiplier(const RadialShape& shape, double V, size_t n_s) {
  FieldSolver solver(n_s, shape.m());
  std::vector<double> w;
  double integral = 0.0;
  solver.solve_unit_source(shape, w, integral);
  return V / integral;
}

double energy(const RadialShape& shape, double V, size_t n_s) {
  return lagrange_multiplier(shape, V, n_s) * V + area(shape);
}

double sphere_area(int N) {
  // |S^{N-1}| = 2 pi^{N/2} / Gamma(N/2)
  return 2.0 * std::pow(kPi, 0.5 * N) / std::tgamma(0.5 * N);
}

double ball_lambda(double R, double V, int N) {
  return static_cast<double>(N) * N * (N + 2) * V / (sphere_area(N) * std::pow(R, N + 2));
}

double ball_boundary_gradient(double R, double V, int N) {
  return ball_lambda(R, V, N) * R / static_cast<double>(N);
}

double ball_energy(double R, double V, int N) {
  return ball_lambda(R, V, N) * V + sphere_area(N) * std::pow(R, N) / static_cast<double>(N);
}

double equilibrium_radius(double V, int N) {
  return std::pow(static_cast<double>(N) * (N + 2) * V / sphere_area(N), 1.0 / (N + 1));
}

double equilibrium_lambda(double V, int N) {
  return static_cast<double>(N) / equilibrium_radius(V, N);
}

double rho_bound(double V, int N) {
  const double cn = std::pow(5.0, -static_cast<double>(N + 2) / (N + 1)) *
                    std::pow(static_cast<double>(N) * (N + 2) / sphere_area(N), 1.0 / (N + 1));
  return cn * std::pow(V, 1.0 / (N + 1));
}

double rho_bound_strict(double V, int N) { return 0.1 * std::pow(V, 1.0 / (N + 1)); }

}  // namespace drop
