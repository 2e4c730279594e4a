#pragma once

#include "mmtc/numerics.hpp"
#include "mmtc/rng.hpp"

namespace mmtc {

// The outside-interference law: a one-sided stable distribution of index
// 2/alpha, characterized entirely by its Laplace transform
// exp(-chi s^{2/alpha}) with chi = phi Gamma(1+2/alpha) Gamma(1-2/alpha).
struct InterferenceField {
  double phi;
  double alpha;
  double chi;

  InterferenceField(double phi_in, double alpha_in);
  // Accepts an externally supplied chi; it must agree with phi and alpha.
  InterferenceField(double phi_in, double alpha_in, double chi_in);

  double beta() const { return 2.0 / alpha; }
};

namespace interference {

// Laplace transform exp(-chi s^{2/alpha}) of the interference, s >= 0.
double laplace(const InterferenceField& field, double s);

// Pr(I <= b) by Gil-Pelaez inversion of the transform; 0 for b <= 0 and
// clamped to [0, 1].
double cdf(const InterferenceField& field, double b,
           const numerics::QuadratureSpec& spec = {});

// One draw of the interference: chi^{alpha/2} times a standard one-sided
// stable variate of index 2/alpha (Kanter construction).
double sample(const InterferenceField& field, RngStream& rng);

}  // namespace interference
}  // namespace mmtc
