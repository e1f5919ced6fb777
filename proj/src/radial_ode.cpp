#include <cmath>
#include <stdexcept>

#include "drop/flow.hpp"

namespace drop {

namespace {

struct Rhs {
  const RadialOdeParams& p;

  double contact_angle(double r) const {
    if (p.mode == RadialOdeParams::Mode::volume_preserving)
      return static_cast<double>(p.N) * (p.N + 2) * p.V / (sphere_area(p.N) * std::pow(r, p.N + 1));
    return p.lambda * r / static_cast<double>(p.N);
  }

  double operator()(double r) const { return p.law.eval(contact_angle(r)); }
};

double rk4_step(const Rhs& f, double r, double dt) {
  const double k1 = f(r);
  const double k2 = f(r + 0.5 * dt * k1);
  const double k3 = f(r + 0.5 * dt * k2);
  const double k4 = f(r + dt * k3);
  return r + dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

}  // namespace

RadialOdeResult radial_ode(const RadialOdeParams& params) {
  if (!(params.initial_r > 0)) throw std::invalid_argument("radial_ode: initial_r must be > 0");
  if (!(params.dt > 0)) throw std::invalid_argument("radial_ode: dt must be > 0");
  const Rhs f{params};

  RadialOdeResult res;
  double t = 0.0, r = params.initial_r;
  res.t.push_back(t);
  res.r.push_back(r);
  bool eq_flagged = false;

  while (t < params.t_end - 1e-15) {
    const double dt = std::min(params.dt, params.t_end - t);
    const double rn = rk4_step(f, r, dt);

    const bool blown = !std::isfinite(rn) || rn > params.r_max;
    const bool extinct = std::isfinite(rn) && rn <= 0.0;
    if (blown || extinct) {
      // bracket the crossing inside [t, t + dt] by bisection on the substep
      double lo = 0.0, hi = dt;
      for (int it = 0; it < 60 && hi - lo > 1e-15 * std::max(1.0, t); ++it) {
        const double mid = 0.5 * (lo + hi);
        const double rm = rk4_step(f, r, mid);
        const bool crossed = blown ? (!std::isfinite(rm) || rm > params.r_max) : (rm <= 0.0);
        if (crossed)
          hi = mid;
        else
          lo = mid;
      }
      res.event = blown ? RadialOdeResult::Event::blowup : RadialOdeResult::Event::extinction;
      res.event_t_lo = t + lo;
      res.event_t_hi = t + hi;
      res.t.push_back(t + hi);
      res.r.push_back(blown ? params.r_max : 0.0);
      return res;
    }

    t += dt;
    r = rn;
    res.t.push_back(t);
    res.r.push_back(r);

    if (!eq_flagged && std::abs(f(r)) < params.eq_tol) {
      eq_flagged = true;
      res.event = RadialOdeResult::Event::equilibrium;
      res.event_t_lo = res.event_t_hi = t;
      // non-terminal: keep integrating to t_end
    }
  }
  return res;
}

}  // namespace drop
