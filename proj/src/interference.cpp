#include "mmtc/interference.hpp"

#include <algorithm>
#include <cmath>

namespace mmtc {

namespace {

constexpr double kPi = 3.14159265358979323846;

double chi_from(double phi, double alpha) {
  const double beta = 2.0 / alpha;
  return phi * std::exp(numerics::log_gamma(1.0 + beta) +
                        numerics::log_gamma(1.0 - beta));
}

void check_field(double phi, double alpha) {
  if (!(phi > 0)) throw ValidationError("InterferenceField: phi must exceed 0");
  if (!(alpha > 2)) throw ValidationError("InterferenceField: alpha must exceed 2");
}

}  // namespace

InterferenceField::InterferenceField(double phi_in, double alpha_in)
    : phi(phi_in), alpha(alpha_in), chi(0.0) {
  check_field(phi, alpha);
  chi = chi_from(phi, alpha);
}

InterferenceField::InterferenceField(double phi_in, double alpha_in, double chi_in)
    : phi(phi_in), alpha(alpha_in), chi(chi_in) {
  check_field(phi, alpha);
  const double expected = chi_from(phi, alpha);
  if (std::abs(expected - chi) > 1e-12 * std::max(1.0, std::abs(expected)))
    throw ValidationError("InterferenceField: chi inconsistent with phi and alpha");
}

namespace interference {

double laplace(const InterferenceField& field, double s) {
  if (!(s >= 0)) throw std::invalid_argument("laplace: requires s >= 0");
  if (s == 0.0) return 1.0;
  return std::exp(-field.chi * std::pow(s, field.beta()));
}

double cdf(const InterferenceField& field, double b,
           const numerics::QuadratureSpec& spec) {
  if (!(b > 0)) return 0.0;
  const double beta = field.beta();
  const double inv_beta = 1.0 / beta;  // alpha / 2 > 1
  const double c = field.chi * std::cos(kPi / field.alpha);
  const double w = field.chi * std::sin(kPi / field.alpha);
  // Substituting t = phi^{2/alpha} removes the integrable singularity at the
  // origin: the transformed integrand tends to w / beta as t -> 0.
  const auto integrand = [=](double t) {
    if (t <= 0.0) return w * inv_beta;
    const double ph = w * t - b * std::pow(t, inv_beta);
    return std::exp(-c * t) * std::sin(ph) / (beta * t);
  };
  const numerics::SinePhase phase{
      [=](double t) { return w * t - b * std::pow(t, inv_beta); },
      [=](double t) {
        return w - b * inv_beta * std::pow(t, inv_beta - 1.0);
      }};
  const double integral = numerics::integrate_oscillatory(integrand, phase, spec);
  return std::clamp(0.5 - integral / kPi, 0.0, 1.0);
}

double sample(const InterferenceField& field, RngStream& rng) {
  const double beta = field.beta();
  const double scale = std::pow(field.chi, 1.0 / beta);  // chi^{alpha/2}
  for (;;) {
    const double u = rng.open01() * kPi;
    const double e = rng.exponential();
    const double sin_u = std::sin(u);
    const double x = std::sin(beta * u) / std::pow(sin_u, 1.0 / beta) *
                     std::pow(std::sin((1.0 - beta) * u) / e, (1.0 - beta) / beta);
    const double value = scale * x;
    if (std::isfinite(value) && value > 0.0) return value;
  }
}

}  // namespace interference
}  // namespace mmtc
