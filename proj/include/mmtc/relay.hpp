#pragma once

#include "mmtc/config.hpp"

namespace mmtc::relay {

enum class Scheme { kRrs, kCrs };

// Probability that the aggregated payload of k1 MTDs survives the relay
// link: L_{I_{o,2}}(2^{tau k1} - 1); 1 for k1 = 0 or tau = 0.
double relay_success(const SystemConfig& cfg, unsigned k1);

struct RelayResult {
  std::vector<double> per_k1;  // relay success conditioned on k1 = 0..2N
  double overall = 0.0;        // expected MTDs surviving both phases
};

// Expected number of MTDs whose data survives aggregation and relaying:
// sum_k1 k1 Pr(K1 = k1) p_rel(k1), with the PMF taken from the scheme.
double avg_successful(const SystemConfig& cfg, Scheme scheme);
// Same, reusing an already computed aggregation PMF.
double avg_successful(const SystemConfig& cfg, const Pmf& pmf);

RelayResult result(const SystemConfig& cfg, const Pmf& pmf);

}  // namespace mmtc::relay
