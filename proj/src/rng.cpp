#include "mmtc/rng.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "mmtc/numerics.hpp"

namespace mmtc {

namespace {

// Hoermann's PTRS transformed rejection; exact for mean >= 10.
unsigned poisson_ptrs(RngStream& rng, double mean) {
  const double log_mean = std::log(mean);
  const double b = 0.931 + 2.53 * std::sqrt(mean);
  const double a = -0.059 + 0.02483 * b;
  const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
  const double v_r = 0.9277 - 3.6224 / (b - 2.0);
  for (;;) {
    const double u = rng.uniform01() - 0.5;
    double v = rng.uniform01();
    const double us = 0.5 - std::abs(u);
    const double kf = std::floor((2.0 * a / us + b) * u + mean + 0.43);
    if (us >= 0.07 && v <= v_r) return static_cast<unsigned>(kf);
    if (kf < 0.0 || (us < 0.013 && v > us)) continue;
    const double k = kf;
    if (std::log(v * inv_alpha / (a / (us * us) + b)) <=
        k * log_mean - mean - numerics::log_gamma(k + 1.0)) {
      return static_cast<unsigned>(kf);
    }
  }
}

unsigned poisson_inversion(RngStream& rng, double mean) {
  const double u = rng.uniform01();
  double p = std::exp(-mean);
  double cum = p;
  unsigned k = 0;
  while (u > cum && k < 4000) {
    ++k;
    p *= mean / k;
    cum += p;
  }
  return k;
}

}  // namespace

unsigned RngStream::poisson(double mean) {
  if (!(mean >= 0)) throw std::invalid_argument("poisson: mean must be >= 0");
  if (mean == 0.0) return 0;
  if (mean <= 30.0) return poisson_inversion(*this, mean);
  return poisson_ptrs(*this, mean);
}

unsigned RngStream::poisson_truncated(double mean, unsigned kmax) {
  if (!(mean > 0)) throw std::invalid_argument("poisson_truncated: mean must be > 0");
  std::vector<double> pmf(kmax + 1);
  double p = std::exp(-mean);
  double total = 0.0;
  for (unsigned k = 0; k <= kmax; ++k) {
    if (k > 0) p *= mean / k;
    pmf[k] = p;
    total += p;
  }
  const double u = uniform01() * total;
  double cum = 0.0;
  for (unsigned k = 0; k <= kmax; ++k) {
    cum += pmf[k];
    if (u <= cum) return k;
  }
  return kmax;
}

}  // namespace mmtc
