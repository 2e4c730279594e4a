#pragma once

#include "mmtc/config.hpp"
#include "mmtc/interference.hpp"

namespace mmtc::rrs {

// Success probability of a solo MTD: L(theta).
double p11(const SystemConfig& cfg);

// Success probability of the first-decoded (stronger) MTD on a shared
// channel; two branches split at theta a2 / a1 = 1.  Requires a1 > 0.
double p12(const SystemConfig& cfg);

// Success probability of the second-decoded (weaker) MTD on a shared
// channel; exactly 0 when theta mu a1 / a2 >= 1.
double p22(const SystemConfig& cfg);

// CDF of V1 = max(h1,h2) - (theta a2/a1) min(h1,h2) for iid unit
// exponentials; valid for all real v.
double cdf_v1(double v, double a1, double a2, double theta);

// CDF of V2 = min(h1,h2) - (theta mu a1/a2) max(h1,h2); valid for all real v.
double cdf_v2(double v, double a1, double a2, double theta, double mu);

// Conditional PMF of the number of decoded MTDs given K = k requesting.
Pmf pmf_given_k(const SystemConfig& cfg, unsigned k);

// Unconditional PMF of decoded MTDs under Poisson(mean_load) traffic.
// Evaluates the closed form and cross-checks it against the direct Poisson
// mixture; throws ConsistencyError if they disagree beyond 1e-8.
Pmf pmf(const SystemConfig& cfg);

// Direct Poisson mixture, truncated where the upper tail drops below 1e-12.
Pmf pmf_direct(const SystemConfig& cfg);

// Open interval of a1 values satisfying theta < a1/a2 < 1/(theta mu) with
// a2 = delta - a1; may be empty (theta^2 mu >= 1).
struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  bool empty() const { return !(lo < hi); }
};
Interval feasible_region(double theta, double mu, double delta);

// Shared building blocks (also used by the CRS PMF).
namespace detail {

// Binomial(n, p) PMF with log-space combinatorics.
std::vector<double> binomial_pmf(unsigned n, double p);

// Convolution of independent PMF vectors.
std::vector<double> convolve(const std::vector<double>& a,
                             const std::vector<double>& b);

// The k <= N block of the unconditional PMF at k1: the Poisson-thinned mass
// e^{-m p} (m p)^{k1} Q(N - k1 + 1, m (1 - p)) / k1!  (0 for k1 > N).
double first_block(unsigned k1, unsigned n_channels, double mean_load, double p);

// Smallest kmax whose upper Poisson tail mass is below `tail`.
unsigned poisson_truncation_point(double mean_load, double tail);

double poisson_pmf(unsigned k, double mean_load);

}  // namespace detail
}  // namespace mmtc::rrs
