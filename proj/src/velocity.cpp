#include "drop/velocity.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace drop {

VelocityLaw VelocityLaw::power(double p) {
  if (!(p > 0)) throw std::invalid_argument("velocity: exponent must be > 0");
  VelocityLaw law;
  law.kind_ = Kind::power;
  law.p_ = p;
  return law;
}

VelocityLaw VelocityLaw::capped_power(double p, double M) {
  if (!(p > 0) || !(M > 0)) throw std::invalid_argument("velocity: need p > 0, M > 0");
  VelocityLaw law;
  law.kind_ = Kind::capped_power;
  law.p_ = p;
  law.cap_ = M;
  return law;
}

VelocityLaw VelocityLaw::capped_power_max_variant(double p, double M) {
  if (!(p > 0) || !(M > 0)) throw std::invalid_argument("velocity: need p > 0, M > 0");
  VelocityLaw law;
  law.kind_ = Kind::capped_power_max_variant;
  law.p_ = p;
  law.cap_ = M;
  return law;
}

VelocityLaw VelocityLaw::table(std::vector<double> s, std::vector<double> F) {
  if (s.size() != F.size() || s.size() < 2)
    throw std::invalid_argument("velocity: table needs matching breakpoints");
  for (size_t i = 1; i < s.size(); ++i)
    if (!(s[i] > s[i - 1]) || !(F[i] > F[i - 1]))
      throw std::invalid_argument("velocity: table must be strictly increasing");
  VelocityLaw law;
  law.kind_ = Kind::table;
  law.table_s_ = std::move(s);
  law.table_f_ = std::move(F);
  // F(1) = 0 must be representable
  const double f1 = law.eval(1.0);
  if (std::abs(f1) > 1e-12) throw std::invalid_argument("velocity: table violates F(1) = 0");
  return law;
}

double VelocityLaw::eval(double s) const {
  switch (kind_) {
    case Kind::power:
      return std::pow(s, p_) - 1.0;
    case Kind::capped_power:
      return std::min(std::pow(s, p_) - 1.0, *cap_);
    case Kind::capped_power_max_variant:
      return std::max(std::pow(s, p_) - 1.0, *cap_);
    case Kind::table: {
      if (s <= table_s_.front())
        return table_f_.front() + (s - table_s_.front()) * (table_f_[1] - table_f_[0]) /
                                      (table_s_[1] - table_s_[0]);
      if (s >= table_s_.back()) {
        const size_t n = table_s_.size();
        return table_f_.back() + (s - table_s_.back()) * (table_f_[n - 1] - table_f_[n - 2]) /
                                     (table_s_[n - 1] - table_s_[n - 2]);
      }
      const auto it = std::upper_bound(table_s_.begin(), table_s_.end(), s);
      const size_t hi = static_cast<size_t>(it - table_s_.begin());
      const double t = (s - table_s_[hi - 1]) / (table_s_[hi] - table_s_[hi - 1]);
      return table_f_[hi - 1] + t * (table_f_[hi] - table_f_[hi - 1]);
    }
  }
  return 0.0;
}

std::optional<double> VelocityLaw::assumption2_constant() const {
  if (kind_ == Kind::power && p_ <= 1.0) return 1.0;
  if ((kind_ == Kind::capped_power || kind_ == Kind::capped_power_max_variant) && cap_)
    return 2.0 * (*cap_ + 2.0);
  return std::nullopt;
}

std::string VelocityLaw::describe() const {
  switch (kind_) {
    case Kind::power:
      return "power(" + std::to_string(p_) + ")";
    case Kind::capped_power:
      return "capped_power(" + std::to_string(p_) + "," + std::to_string(*cap_) + ")";
    case Kind::capped_power_max_variant:
      return "capped_power_max(" + std::to_string(p_) + "," + std::to_string(*cap_) + ")";
    case Kind::table:
      return "table(" + std::to_string(table_s_.size()) + ")";
  }
  return "?";
}

Assumption2Report check_assumption2(const VelocityLaw& law, double c, double eps_max,
                                    size_t grid, double s_max) {
  if (!(c > 0) || !(eps_max > 0)) throw std::invalid_argument("check_assumption2: c, eps_max > 0");
  Assumption2Report report;
  report.worst_margin = 1e300;
  for (size_t ie = 1; ie <= grid; ++ie) {
    const double eps = eps_max * static_cast<double>(ie) / static_cast<double>(grid);
    for (size_t is = 0; is <= grid; ++is) {
      const double s = s_max * static_cast<double>(is) / static_cast<double>(grid);
      const double margin = (1.0 + eps) * law.eval(s / (1.0 + eps)) + c * eps - law.eval(s);
      if (margin < report.worst_margin) {
        report.worst_margin = margin;
        report.worst_s = s;
        report.worst_eps = eps;
      }
    }
  }
  report.pass = report.worst_margin >= -1e-9;
  return report;
}

bool sublinear_bound_check(const VelocityLaw& law, double c, size_t grid, double s_max) {
  if (!(c > 0)) throw std::invalid_argument("sublinear_bound_check: c > 0");
  const double f0 = law.eval(0.0);
  for (size_t i = 0; i <= grid; ++i) {
    const double s = s_max * static_cast<double>(i) / static_cast<double>(grid);
    const double bound = c * s + std::max((1.0 + s) * f0, 0.0);
    if (law.eval(s) > bound + 1e-9) return false;
  }
  return true;
}

bool validate_law(const VelocityLaw& law, size_t grid, double s_max) {
  if (std::abs(law.eval(1.0)) > 1e-12) return false;
  double prev = law.eval(0.0);
  for (size_t i = 1; i <= grid; ++i) {
    const double s = s_max * static_cast<double>(i) / static_cast<double>(grid);
    const double f = law.eval(s);
    if (f < prev - 1e-12) return false;
    prev = f;
  }
  return true;
}

}  // namespace drop
