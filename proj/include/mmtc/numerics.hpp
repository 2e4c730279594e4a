#pragma once

#include <cstdint>
#include <functional>

#include "mmtc/errors.hpp"

namespace mmtc::numerics {

// Controls evaluation of the semi-infinite integrals below.
struct QuadratureSpec {
  double rel_tol = 1e-8;
  double abs_tol = 1e-10;
  long max_subdivisions = 1000000;
  // Integrand envelope below which summation stops.
  double tail_cutoff = 1e-14;

  void validate() const;
};

// ln Gamma(x), x > 0.  Relative error <= 1e-12 on [1e-3, 1e6]; exact at the
// zeros x = 1 and x = 2.
double log_gamma(double x);

// psi(x) = d ln Gamma / dx, x > 0.  Relative error <= 1e-10 on [1e-3, 1e6].
double digamma(double x);

// Regularized incomplete gamma functions, a > 0, x >= 0.
// Q(a, x) = Gamma(a, x) / Gamma(a); P = 1 - Q.
double regularized_gamma_p(double a, double x);
double regularized_gamma_q(double a, double x);
// ln Q(a, x); usable where Q underflows relative interest.
double log_regularized_gamma_q(double a, double x);

// Unnormalized upper incomplete gamma Gamma(a, x) = Q(a, x) Gamma(a).
// Throws std::overflow_error when the value exceeds double range.
double upper_incomplete_gamma(double a, double x);

// ln C(n, k), 0 <= k <= n.  Exact integer C(n, k) after exponentiation and
// rounding for n <= 60.
double log_binomial(long long n, long long k);

// Kummer 1F1(a; b; z) for nonpositive integer a (a finite polynomial).
double kummer_1f1_neg_int(long long a, double b, double z);
// ln 1F1(a; b; z) for nonpositive integer a and z <= 0, where every term of
// the polynomial is nonnegative; safe where the direct value overflows.
double log_kummer_1f1_neg_int(long long a, double b, double z);

// log(exp(a) + exp(b)) without overflow.
double log_add_exp(double a, double b);

// The sign of the integrand follows sin(value(x)); deriv is d value / dx.
// Used to place quadrature panels at the sine's zero crossings.
struct SinePhase {
  std::function<double(double)> value;
  std::function<double(double)> deriv;
};

// Integral of f over [0, inf) for integrands with a decaying envelope.
// The overload with a SinePhase subdivides at the sign changes of the sine
// factor and accelerates the alternating panel series (Wynn epsilon); the
// phase-free overload grows panels geometrically.  f(0) must return the
// analytic limit of the integrand at 0.
// Throws NonConvergenceError when max_subdivisions is exhausted.
double integrate_oscillatory(const std::function<double(double)>& f,
                             const QuadratureSpec& spec = {});
double integrate_oscillatory(const std::function<double(double)>& f,
                             const SinePhase& phase,
                             const QuadratureSpec& spec = {});

}  // namespace mmtc::numerics
