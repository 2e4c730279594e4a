#include "mmtc/config.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace mmtc {

void PowerSplit::validate() const {
  if (!(a1 >= 0) || !(a2 >= 0))
    throw ValidationError("power split coefficients must be nonnegative");
  if (std::abs(a1 + a2 - delta) > 1e-12)
    throw ValidationError("power split must satisfy a1 + a2 = delta");
}

PowerSplit PowerSplit::from_a1(double a1, double delta) {
  PowerSplit s;
  s.a1 = a1;
  s.a2 = delta - a1;
  s.delta = delta;
  s.validate();
  return s;
}

void SystemConfig::validate() const {
  if (!(mean_load > 0)) throw ValidationError("mean_load must exceed 0");
  if (channels < 1) throw ValidationError("channels must be >= 1");
  if (max_per_channel != 1 && max_per_channel != 2)
    throw ValidationError("max_per_channel must be 1 or 2");
  if (!(alpha > 2)) throw ValidationError("alpha must exceed 2");
  if (!(mu >= 0) || !(mu <= 1)) throw ValidationError("mu must lie in [0, 1]");
  if (!(theta > 0)) throw ValidationError("theta must exceed 0");
  if (!(tau >= 0)) throw ValidationError("tau must be >= 0");
  if (!(phi1 > 0)) throw ValidationError("phi1 must exceed 0");
  if (!(phi2 > 0)) throw ValidationError("phi2 must exceed 0");
  split.validate();
}

SystemConfig SystemConfig::with_a1(double a1) const {
  SystemConfig out = *this;
  out.split = PowerSplit::from_a1(a1, split.delta);
  return out;
}

double Pmf::sum() const {
  double s = 0.0;
  for (const double v : p) s += v;
  return s;
}

double Pmf::mean() const {
  double s = 0.0;
  for (std::size_t k = 1; k < p.size(); ++k) s += static_cast<double>(k) * p[k];
  return s;
}

void Pmf::validate() const {
  for (const double v : p) {
    if (!(v >= -1e-12) || !(v <= 1.0 + 1e-8))
      throw ValidationError("pmf entry outside [0, 1]");
  }
  const double s = sum();
  if (s < 1.0 - truncation_mass - 1e-8 || s > 1.0 + 1e-8)
    throw ValidationError("pmf mass " + std::to_string(s) +
                          " inconsistent with truncation " +
                          std::to_string(truncation_mass));
}

double total_variation(const std::vector<double>& a, const std::vector<double>& b) {
  double tv = 0.0;
  const std::size_t n = std::max(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    const double pa = i < a.size() ? a[i] : 0.0;
    const double pb = i < b.size() ? b[i] : 0.0;
    tv += std::abs(pa - pb);
  }
  return 0.5 * tv;
}

double total_variation(const Pmf& a, const Pmf& b) {
  return total_variation(a.p, b.p);
}

}  // namespace mmtc
