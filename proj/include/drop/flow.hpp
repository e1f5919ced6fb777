#pragma once

#include <optional>
#include <string>
#include <vector>

#include "drop/field.hpp"
#include "drop/shape.hpp"
#include "drop/velocity.hpp"

namespace drop {

struct OptimizerSettings {
  int max_iter = 80;              // descent iterations per minimizing-movement step
  double step_tol_frac = 1e-4;    // stop when the accepted move < frac * M * h (sup norm)
  double sufficient_decrease = 1e-4;
  int max_backtracks = 30;
  int pattern_top_k = 12;         // per-angle +/- probes tried when the line search stalls
};

/// Parameters of the restricted minimizing-movement scheme: one step minimizes
/// J(omega) + dist~^2(omega_k, omega)/h over shapes in S_{r0} that move at
/// most M*h per angle (which bounds the Hausdorff movement for star-shaped
/// sets).
struct SchemeParams {
  double h = 0.02;        // time step
  double M = 5.0;         // free-boundary speed cap; per-step cap distance is M*h
  double r0 = 0.5;        // strong star-shapedness radius of the admissible class
  double V = 1.0;         // conserved volume
  size_t m = 256;         // angular samples
  size_t n_s = 64;        // radial layers of the field solve
  OptimizerSettings opt;
  double rho = 0.0;       // reflection radius to monitor; <= 0 disables monitoring
  size_t rho_dirs = 128;  // direction grid of the per-step reflection monitor
  bool rho_strict = false;  // require initial data to pass check_rho_reflection(rho)

  void validate() const;  // throws std::invalid_argument on bad parameters
};

struct StepRecord {
  size_t k = 0;
  double t = 0.0;
  RadialShape shape;
  double lambda = 0.0;
  double energy = 0.0;
  double pseudo_step_sq = 0.0;  // dist~^2(omega_k, omega_{k+1}); 0 on the final record
  double hausdorff_step = 0.0;  // boundary Hausdorff distance of the same step
  double rho_sup_smin = -1.0;   // sup over directions of s_min; -1 when not monitored
  bool rho_ball_inside = true;
  double grad_min = 0.0, grad_max = 0.0;  // contact-angle range on the boundary
  double min_radius = 0.0, max_radius = 0.0;
};

struct FlowTrajectory {
  SchemeParams params;
  std::vector<StepRecord> steps;
  bool aborted = false;
  std::string abort_reason;
};

/// One restricted minimizing-movement step: projected descent on the radii
/// vector using the boundary density (1 - |Du|^2) of the energy derivative
/// plus the exact derivative of the dist~^2 quadrature, with per-angle
/// movement clamping and tangent-criterion rejection.  The returned shape is
/// admissible and its objective never exceeds the current one.
RadialShape jko_step(const RadialShape& current, const SchemeParams& params);
RadialShape jko_step(const RadialShape& current, const SchemeParams& params, FieldSolver& solver,
                     std::optional<DropField>* final_field = nullptr);

/// Iterates jko_step ceil(T/h) times with per-step diagnostics.  Aborts with a
/// flagged trajectory if B_rho(0) leaves the shape or the star-shapedness
/// verification fails.
FlowTrajectory run_flow(const RadialShape& initial, const SchemeParams& params, double T);

struct DissipationRecord {
  size_t k = 0;
  double energy_rate = 0.0;          // (J_{k+1} - J_k) / h
  double boundary_quadrature = 0.0;  // -integral over the boundary of (|Du|^2 - 1)^2
  double relative_discrepancy = 0.0;
};

/// Compares the discrete energy rate against the contact-angle defect
/// quadrature along a trajectory.
std::vector<DissipationRecord> dissipation_check(const FlowTrajectory& traj);

/// Analytic d/dt J(B_r) for the radial volume-preserving flow with
/// F(s) = s^2 - 1:  -|S^{N-1}| r^{N-1} (s(r)^2 - 1)^2.
double radial_dissipation_rate(double r, double V, int N = 2);

// ---- radial reference dynamics -------------------------------------------

struct RadialOdeParams {
  double initial_r = 1.0;
  VelocityLaw law = VelocityLaw::power(2.0);
  enum class Mode { volume_preserving, fixed_lambda } mode = Mode::volume_preserving;
  double V = 1.0;        // volume_preserving: contact angle N(N+2)V/(|S^{N-1}| r^{N+1})
  double lambda = 1.0;   // fixed_lambda: contact angle lambda * r / N
  int N = 2;
  double t_end = 10.0;
  double dt = 1e-3;
  double r_max = 1e6;    // blow-up threshold
  double eq_tol = 1e-8;  // |dr/dt| below this flags equilibrium
};

struct RadialOdeResult {
  std::vector<double> t;
  std::vector<double> r;
  enum class Event { none, blowup, extinction, equilibrium } event = Event::none;
  double event_t_lo = 0.0, event_t_hi = 0.0;
};

/// Fourth-order explicit integration of dr/dt = F(contact angle(r)) with
/// event detection (blow-up, extinction, equilibrium).  Blow-up and
/// extinction are terminal and reported with a bracketing time interval.
RadialOdeResult radial_ode(const RadialOdeParams& params);

}  // namespace drop
