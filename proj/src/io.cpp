#include "drop/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace drop {

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_shape_csv(const RadialShape& shape, const std::string& path) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("io: cannot open " + path + " for writing");
  f << "theta,radius\n";
  for (size_t i = 0; i < shape.m(); ++i)
    f << fmt_double(shape.theta(i)) << "," << fmt_double(shape.radius(i)) << "\n";
}

RadialShape read_shape_csv(const std::string& path, size_t m) {
  std::ifstream f(path);
  if (!f) throw std::invalid_argument("io: cannot open " + path);
  std::string line;
  if (!std::getline(f, line)) throw std::invalid_argument("io: empty shape file " + path);
  // tolerate whitespace/BOM around the header
  if (line.find("theta") == std::string::npos || line.find("radius") == std::string::npos)
    throw std::invalid_argument("io: malformed shape file header in " + path);
  std::vector<double> thetas, radii;
  size_t lineno = 1;
  while (std::getline(f, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::istringstream ss(line);
    std::string a, b;
    if (!std::getline(ss, a, ',') || !std::getline(ss, b))
      throw std::invalid_argument("io: malformed shape row at line " + std::to_string(lineno));
    double th = 0, ra = 0;
    try {
      th = std::stod(a);
      ra = std::stod(b);
    } catch (const std::exception&) {
      throw std::invalid_argument("io: malformed shape row at line " + std::to_string(lineno));
    }
    if (!std::isfinite(th) || !std::isfinite(ra) || ra <= 0)
      throw std::invalid_argument("io: invalid shape row at line " + std::to_string(lineno));
    if (!thetas.empty() && th <= thetas.back())
      throw std::invalid_argument("io: theta must be strictly increasing at line " +
                               std::to_string(lineno));
    if (th < 0 || th >= kTwoPi)
      throw std::invalid_argument("io: theta out of [0, 2pi) at line " + std::to_string(lineno));
    thetas.push_back(th);
    radii.push_back(ra);
  }
  if (thetas.size() < 3) throw std::invalid_argument("io: too few shape rows in " + path);

  // periodic linear resample onto the uniform grid of size m
  const size_t n = thetas.size();
  std::vector<double> out(m);
  for (size_t i = 0; i < m; ++i) {
    const double th = kTwoPi * static_cast<double>(i) / static_cast<double>(m);
    // find the bracketing samples (periodic)
    size_t hi = 0;
    while (hi < n && thetas[hi] <= th) ++hi;
    const size_t i1 = hi % n;
    const size_t i0 = (hi + n - 1) % n;
    double t0 = thetas[i0], t1 = thetas[i1];
    double span = t1 - t0;
    double local = th - t0;
    if (span <= 0) span += kTwoPi;
    if (local < 0) local += kTwoPi;
    const double frac = span > 0 ? local / span : 0.0;
    out[i] = radii[i0] + frac * (radii[i1] - radii[i0]);
  }
  return RadialShape(m, std::move(out));
}

void write_field_csv(const DropField& field, const std::string& path) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("io: cannot open " + path + " for writing");
  f << "s,theta,w\n";
  const size_t m = field.shape.m();
  f << "0,0," << fmt_double(field.w_at(0, 0)) << "\n";
  for (size_t i = 1; i <= field.n_s; ++i) {
    const double s = static_cast<double>(i) / static_cast<double>(field.n_s);
    for (size_t j = 0; j < m; ++j)
      f << fmt_double(s) << "," << fmt_double(field.shape.theta(j)) << ","
        << fmt_double(field.w_at(i, j)) << "\n";
  }
}

void write_trajectory_jsonl(const FlowTrajectory& traj, const std::string& path) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("io: cannot open " + path + " for writing");
  for (const StepRecord& r : traj.steps) {
    f << "{\"k\":" << r.k << ",\"t\":" << fmt_double(r.t) << ",\"lambda\":" << fmt_double(r.lambda)
      << ",\"energy\":" << fmt_double(r.energy)
      << ",\"pseudo_step_sq\":" << fmt_double(r.pseudo_step_sq)
      << ",\"hausdorff_step\":" << fmt_double(r.hausdorff_step)
      << ",\"rho_sup_smin\":" << fmt_double(r.rho_sup_smin)
      << ",\"min_radius\":" << fmt_double(r.min_radius)
      << ",\"max_radius\":" << fmt_double(r.max_radius)
      << ",\"grad_min\":" << fmt_double(r.grad_min) << ",\"grad_max\":" << fmt_double(r.grad_max)
      << "}\n";
  }
}

void write_radial_ode_csv(const RadialOdeResult& result, const std::string& path) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("io: cannot open " + path + " for writing");
  f << "t,r\n";
  for (size_t i = 0; i < result.t.size(); ++i)
    f << fmt_double(result.t[i]) << "," << fmt_double(result.r[i]) << "\n";
  const char* name = "none";
  switch (result.event) {
    case RadialOdeResult::Event::none: name = "none"; break;
    case RadialOdeResult::Event::blowup: name = "blowup"; break;
    case RadialOdeResult::Event::extinction: name = "extinction"; break;
    case RadialOdeResult::Event::equilibrium: name = "equilibrium"; break;
  }
  f << "event," << name << "," << fmt_double(result.event_t_lo) << ","
    << fmt_double(result.event_t_hi) << "\n";
}

}  // namespace drop
