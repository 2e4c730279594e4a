#pragma once

#include <vector>

#include "mmtc/errors.hpp"

namespace mmtc {

// Per-channel power coefficients of the two decode positions, constrained by
// a1 + a2 = delta.
struct PowerSplit {
  double a1 = 0.5;
  double a2 = 0.5;
  double delta = 1.0;

  void validate() const;
  static PowerSplit from_a1(double a1, double delta);
};

// One scenario of the aggregation + relay system.  phi1/phi2 are linear
// (dB conversion happens at the configuration boundary).  rho is the power
// control target; it is carried for documentation only and has no effect in
// an interference-limited network.
struct SystemConfig {
  double mean_load = 60.0;       // expected MTDs per aggregation event
  unsigned channels = 30;        // N
  unsigned max_per_channel = 2;  // L, 1 or 2
  double alpha = 3.6;            // path-loss exponent
  double mu = 0.1;               // SIC imperfection
  double theta = 1.0;            // SIR threshold
  double tau = 0.2;              // relay rate, bpcu per MTD
  double phi1 = 0.1;             // aggregation-phase interference factor
  double phi2 = 2.5118864315095801e-3;  // relay-phase interference factor
  PowerSplit split;
  double rho = 1.0;

  void validate() const;
  SystemConfig with_a1(double a1) const;
};

// Probability vector over k1 in {0, ..., 2N}.  truncation_mass is the
// Poisson tail excluded by a truncated mixture (0 for exact closed forms).
struct Pmf {
  std::vector<double> p;
  double truncation_mass = 0.0;

  double sum() const;
  double mean() const;
  void validate() const;
};

// Total variation distance between two PMFs over the same support.
double total_variation(const Pmf& a, const Pmf& b);
double total_variation(const std::vector<double>& a, const std::vector<double>& b);

}  // namespace mmtc
