#pragma once

#include <optional>
#include <string>
#include <vector>

namespace drop {

/// Contact-line velocity law F: strictly increasing, continuous, F(1) = 0.
/// Kinds: power (s^p - 1), capped_power (min{s^p - 1, M}: a speed ceiling,
/// keeping the free boundary under the movement restriction), and a piecewise
/// linear table.  The capped law with the cap applied as max{s^p - 1, M} is
/// available as a variant for structural checks.
class VelocityLaw {
 public:
  enum class Kind { power, capped_power, capped_power_max_variant, table };

  static VelocityLaw power(double p);
  static VelocityLaw capped_power(double p, double M);
  static VelocityLaw capped_power_max_variant(double p, double M);
  static VelocityLaw table(std::vector<double> s, std::vector<double> F);

  double operator()(double s) const { return eval(s); }
  double eval(double s) const;

  Kind kind() const { return kind_; }
  double exponent() const { return p_; }
  std::optional<double> cap() const { return cap_; }
  /// Assumption-2 constant when one is known for this law (c = 1 for
  /// power(p <= 1), c = 2(M+2) for the capped quadratic family).
  std::optional<double> assumption2_constant() const;

  std::string describe() const;

 private:
  VelocityLaw() = default;
  Kind kind_ = Kind::power;
  double p_ = 1.0;
  std::optional<double> cap_;
  std::vector<double> table_s_, table_f_;
};

struct Assumption2Report {
  bool pass = false;
  double worst_margin = 0.0;  // min over the grid of (1+eps)F(s/(1+eps)) + c eps - F(s)
  double worst_s = 0.0;
  double worst_eps = 0.0;
};

/// Grid check of (1+eps) F((1+eps)^{-1} s) + c eps >= F(s) for
/// s in [0, s_max], eps in (0, eps_max].
Assumption2Report check_assumption2(const VelocityLaw& law, double c, double eps_max,
                                    size_t grid = 200, double s_max = 20.0);

/// Grid check of the sublinearity consequence F(s) <= c s + max{(1+s) F(0), 0}.
bool sublinear_bound_check(const VelocityLaw& law, double c, size_t grid = 10000,
                           double s_max = 50.0);

/// Monotonicity on >= `grid` points over [0, s_max] and F(1) = 0 within 1e-12.
bool validate_law(const VelocityLaw& law, size_t grid = 10000, double s_max = 10.0);

}  // namespace drop
