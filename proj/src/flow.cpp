#include "drop/flow.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "drop/metrics.hpp"
#include "drop/par.hpp"
#include "drop/reflection.hpp"

namespace drop {

void SchemeParams::validate() const {
  if (!(h > 0)) throw std::invalid_argument("scheme: h must be > 0");
  if (!(M > 0)) throw std::invalid_argument("scheme: M must be > 0");
  if (!(r0 > 0)) throw std::invalid_argument("scheme: r0 must be > 0");
  if (!(V > 0)) throw std::invalid_argument("scheme: V must be > 0");
  if (n_s < 32) throw std::invalid_argument("scheme: n_s must be >= 32");
  if (rho > 0 && rho >= rho_bound(V))
    throw std::invalid_argument("scheme: rho must be below rho_bound(V) for monitoring");
}

namespace {

struct Objective {
  const RadialShape& base;
  const SchemeParams& params;
  FieldSolver& solver;

  struct Value {
    double obj = 0.0;
    DropField field;
  };

  Value eval(const std::vector<double>& radii) const {
    RadialShape shape(base.m(), radii, base.center_offset());
    Value v{0.0, solver.solve(shape, params.V)};
    v.obj = v.field.energy + pseudo_dist_sq(base, shape) / params.h;
    return v;
  }
};

// Gradient of the objective with respect to the radii vector: boundary
// density (1 - |Du|^2) X dtheta for the energy, plus the derivative of the
// dist~^2 column quadrature, sign(X - X_k) d(X e_theta, boundary_k) X dtheta / h.
std::vector<double> objective_gradient(const std::vector<double>& X, const DropField& field,
                                       const RadialShape& base, const SchemeParams& params) {
  const size_t m = base.m();
  const double dth = base.dtheta();
  const BoundaryPolyline& base_poly = base.polyline();
  std::vector<double> g(m);
  par::for_each(static_cast<std::ptrdiff_t>(m), [&](std::ptrdiff_t jj) {
    const auto j = static_cast<size_t>(jj);
    const double gb = field.boundary_gradient[j];
    double val = (1.0 - gb * gb) * X[j];
    const double diff = X[j] - base.radius(j);
    if (diff != 0.0) {
      const double d = base_poly.distance(unit_dir(base.theta(j)) * X[j]);
      val += (diff > 0 ? 1.0 : -1.0) * d * X[j] / params.h;
    }
    g[j] = val * dth;
  });
  return g;
}

double sup_norm_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double d = 0.0;
  for (size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

bool star_feasible(const RadialShape& shape, double r0) {
  return star_radius(shape) >= r0 * (1.0 - 1e-12);
}

}  // namespace

RadialShape jko_step(const RadialShape& current, const SchemeParams& params, FieldSolver& solver,
                     std::optional<DropField>* final_field) {
  params.validate();
  if (!star_feasible(current, params.r0))
    throw std::invalid_argument("jko_step: infeasible admissible class, r0 > star_radius(current)");

  const size_t m = current.m();
  const double cap = params.M * params.h;
  const std::vector<double>& Xk = current.radii();

  Objective objective{current, params, solver};
  std::vector<double> X = Xk;
  Objective::Value cur = objective.eval(X);

  // candidates that break the mapped mesh or the solve are rejected like any
  // other infeasible trial; failures at accepted iterates still propagate
  auto try_eval = [&](const std::vector<double>& radii) -> std::optional<Objective::Value> {
    try {
      return objective.eval(radii);
    } catch (const std::runtime_error&) {
      return std::nullopt;
    }
  };

  auto clamp_candidate = [&](std::vector<double> Y) {
    for (size_t j = 0; j < m; ++j) {
      Y[j] = std::clamp(Y[j], Xk[j] - cap, Xk[j] + cap);
      Y[j] = std::max(Y[j], 1e-8);
    }
    return Y;
  };

  double alpha = -1.0;  // set from the first gradient
  const double step_tol = params.opt.step_tol_frac * cap;
  const double pattern_delta = std::max(8.0 * step_tol, 1e-3 * cap);

  for (int iter = 0; iter < params.opt.max_iter; ++iter) {
    const std::vector<double> g = objective_gradient(X, cur.field, current, params);
    double gmax = 0.0;
    for (double v : g) gmax = std::max(gmax, std::abs(v));
    if (gmax == 0.0) break;
    if (alpha <= 0.0) alpha = 0.9 * cap / gmax;

    bool accepted = false;
    double moved = 0.0;
    for (int bt = 0; bt < params.opt.max_backtracks; ++bt) {
      if (alpha * gmax < 0.3 * step_tol) break;  // step below resolution
      std::vector<double> Y(m);
      for (size_t j = 0; j < m; ++j) Y[j] = X[j] - alpha * g[j];
      Y = clamp_candidate(std::move(Y));
      moved = sup_norm_diff(Y, X);
      if (moved < 1e-17) break;
      RadialShape trial(m, Y, current.center_offset());
      if (!star_feasible(trial, params.r0)) {
        alpha *= 0.5;  // reject and shrink on constraint violation
        continue;
      }
      std::optional<Objective::Value> val = try_eval(Y);
      if (!val) {
        alpha *= 0.5;
        continue;
      }
      double step2 = 0.0;
      for (size_t j = 0; j < m; ++j) step2 += (Y[j] - X[j]) * (Y[j] - X[j]);
      if (val->obj <= cur.obj - params.opt.sufficient_decrease * step2 / alpha) {
        X = std::move(Y);
        cur = std::move(*val);
        alpha *= 1.6;
        accepted = true;
        break;
      }
      alpha *= 0.5;
    }

    if (accepted) {
      if (moved < step_tol) break;
      continue;
    }

    // Line search stalled: one bounded round of per-angle +/- probes on the
    // angles with the largest gradient entries, then stop if none improves.
    std::vector<size_t> order(m);
    std::iota(order.begin(), order.end(), size_t{0});
    std::sort(order.begin(), order.end(),
              [&](size_t a, size_t b) { return std::abs(g[a]) > std::abs(g[b]); });
    bool improved = false;
    const int probes = std::min<int>(params.opt.pattern_top_k, static_cast<int>(m));
    for (int q = 0; q < probes && !improved; ++q) {
      const size_t j = order[static_cast<size_t>(q)];
      for (double sgn : {-1.0, 1.0}) {
        std::vector<double> Y = X;
        Y[j] += sgn * pattern_delta;
        Y = clamp_candidate(std::move(Y));
        if (std::abs(Y[j] - X[j]) < 1e-17) continue;
        RadialShape trial(m, Y, current.center_offset());
        if (!star_feasible(trial, params.r0)) continue;
        std::optional<Objective::Value> val = try_eval(Y);
        if (!val) continue;
        if (val->obj < cur.obj) {
          X = std::move(Y);
          cur = std::move(*val);
          improved = true;
          break;
        }
      }
    }
    if (!improved) break;  // no admissible improvement above resolution
    alpha = -1.0;          // restart the step size after a pattern move
  }

  if (final_field) *final_field = std::move(cur.field);
  return RadialShape(m, X, current.center_offset());
}

RadialShape jko_step(const RadialShape& current, const SchemeParams& params) {
  FieldSolver solver(params.n_s, current.m());
  return jko_step(current, params, solver);
}

FlowTrajectory run_flow(const RadialShape& initial, const SchemeParams& params, double T) {
  params.validate();
  if (initial.m() != params.m)
    throw std::invalid_argument("run_flow: initial shape resolution must match params.m");
  if (!star_feasible(initial, params.r0))
    throw std::invalid_argument("run_flow: initial shape not in the admissible class");
  if (params.rho > 0 && initial.min_radius() < params.rho)
    throw std::invalid_argument("run_flow: B_rho(0) not inside the initial shape");
  if (params.rho > 0 && params.rho_strict) {
    const ReflectionReport rep = check_rho_reflection(initial, params.rho, params.rho_dirs);
    if (!rep.pass)
      throw std::invalid_argument("run_flow: initial data fails the rho-reflection check");
  }

  FlowTrajectory traj;
  traj.params = params;
  FieldSolver solver(params.n_s, params.m);

  auto make_record = [&](size_t k, const RadialShape& shape, const DropField& field) {
    StepRecord rec{.k = k, .t = static_cast<double>(k) * params.h, .shape = shape};
    rec.lambda = field.lambda;
    rec.energy = field.energy;
    rec.grad_min = *std::min_element(field.boundary_gradient.begin(), field.boundary_gradient.end());
    rec.grad_max = *std::max_element(field.boundary_gradient.begin(), field.boundary_gradient.end());
    rec.min_radius = shape.min_radius();
    rec.max_radius = shape.max_radius();
    if (params.rho > 0) {
      const ReflectionReport rep = check_rho_reflection(shape, params.rho, params.rho_dirs);
      rec.rho_sup_smin = rep.rho_reflection_radius;
      rec.rho_ball_inside = rep.ball_radius_check;
    }
    return rec;
  };

  RadialShape cur = initial;
  DropField field = solver.solve(cur, params.V);
  traj.steps.push_back(make_record(0, cur, field));

  const auto nsteps = static_cast<size_t>(std::ceil(T / params.h - 1e-12));
  for (size_t k = 0; k < nsteps; ++k) {
    std::optional<DropField> next_field;
    RadialShape next = jko_step(cur, params, solver, &next_field);
    traj.steps.back().pseudo_step_sq = pseudo_dist_sq(cur, next);
    traj.steps.back().hausdorff_step = hausdorff(cur, next);
    traj.steps.push_back(make_record(k + 1, next, *next_field));
    cur = std::move(next);

    if (params.rho > 0 && cur.min_radius() < params.rho) {
      traj.aborted = true;
      traj.abort_reason = "B_rho(0) exited the shape";
      break;
    }
    if (!star_feasible(cur, params.r0 * (1.0 - 1e-9))) {
      traj.aborted = true;
      traj.abort_reason = "star-shapedness verification failed";
      break;
    }
  }
  return traj;
}

std::vector<DissipationRecord> dissipation_check(const FlowTrajectory& traj) {
  std::vector<DissipationRecord> out;
  if (traj.steps.size() < 2) throw std::invalid_argument("dissipation_check: need >= 2 steps");
  const double h = traj.params.h;
  for (size_t k = 0; k + 1 < traj.steps.size(); ++k) {
    const StepRecord& a = traj.steps[k];
    DissipationRecord rec;
    rec.k = k;
    rec.energy_rate = (traj.steps[k + 1].energy - a.energy) / h;
    // -integral over the contact line of (|Du|^2 - 1)^2, at step k
    const RadialShape& shape = a.shape;
    const size_t m = shape.m();
    const double dth = shape.dtheta();
    // the record keeps only the gradient range; re-solve for the full trace
    DropField field = drop_profile(shape, traj.params.V, traj.params.n_s);
    double quad = 0.0;
    for (size_t j = 0; j < m; ++j) {
      const double g = field.boundary_gradient[j];
      const double X = shape.radius(j);
      const double Xp = shape.radius_derivative(j);
      quad += (g * g - 1.0) * (g * g - 1.0) * std::sqrt(X * X + Xp * Xp) * dth;
    }
    rec.boundary_quadrature = -quad;
    const double denom = std::max({std::abs(rec.energy_rate), std::abs(rec.boundary_quadrature), 1e-14});
    rec.relative_discrepancy = std::abs(rec.energy_rate - rec.boundary_quadrature) / denom;
    out.push_back(rec);
  }
  return out;
}

double radial_dissipation_rate(double r, double V, int N) {
  const double s = ball_boundary_gradient(r, V, N);
  const double defect = s * s - 1.0;
  return -sphere_area(N) * std::pow(r, N - 1) * defect * defect;
}

}  // namespace drop
