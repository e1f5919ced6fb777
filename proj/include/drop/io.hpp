#pragma once

#include <string>
#include <vector>

#include "drop/field.hpp"
#include "drop/flow.hpp"
#include "drop/shape.hpp"

namespace drop {

/// Formats a double with 17 significant digits (round-trip exact).
std::string fmt_double(double v);

/// Shape CSV: header `theta,radius`, theta strictly increasing in [0, 2pi),
/// radius > 0.  Readers resample to the configured m by periodic linear
/// interpolation.
void write_shape_csv(const RadialShape& shape, const std::string& path);
RadialShape read_shape_csv(const std::string& path, size_t m = 256);

/// (s, theta, w) rows of the unit-source grid for external visualization.
void write_field_csv(const DropField& field, const std::string& path);

/// Trajectory JSON-lines: one record per step with fields
/// {k, t, lambda, energy, pseudo_step_sq, hausdorff_step, rho_sup_smin,
///  min_radius, max_radius, grad_min, grad_max}.
void write_trajectory_jsonl(const FlowTrajectory& traj, const std::string& path);

/// (t, r) CSV with an `event` trailer line: event,<kind>,<t_lo>,<t_hi>.
void write_radial_ode_csv(const RadialOdeResult& result, const std::string& path);

}  // namespace drop
