#pragma once

#include <optional>

#include "mmtc/config.hpp"
#include "mmtc/interference.hpp"

namespace mmtc::crs {

// Channel context under ordered scheduling: the first MTD allocated on the
// channel has the i-th largest gain of k requesting MTDs; its partner, when
// the channel is shared, has rank i + N.
struct CrsContext {
  unsigned rank = 1;        // i, 1-based
  unsigned population = 1;  // k
  std::optional<PowerSplit> split_override;  // per-rank split, default scalar

  void validate(const SystemConfig& cfg, bool paired) const;
};

// Mean-gain coefficient B^{(i,K)}_{j,u} of the Gil-Pelaez approximation;
// (j, u) is one of (1,1), (1,2), (2,2).
double b_coefficient(const CrsContext& ctx, unsigned j, unsigned u,
                     const SystemConfig& cfg);

// Approximate success probability: the interference CDF evaluated at the B
// coefficient (identical code path); 0 whenever B <= 0.
double success(const CrsContext& ctx, unsigned j, unsigned u,
               const SystemConfig& cfg,
               const numerics::QuadratureSpec& spec = {});

// Rank-averaged success probabilities for population k.
//   p11: mean over the solo ranks i = k-N+1 .. N   (only for N < k < 2N)
//   p12, p22: mean over the paired ranks i = 1 .. min(k-N, N)  (k > N)
struct AveragedProbs {
  std::optional<double> p11;
  double p12 = 0.0;
  double p22 = 0.0;
};
AveragedProbs averaged_probs(const SystemConfig& cfg, unsigned k,
                             const numerics::QuadratureSpec& spec = {});

// Approximate PMF of decoded MTDs under ordered scheduling.  The k <= N
// block is shared verbatim with the RRS closed form; the k >= 2N block keeps
// explicit Poisson weights and is truncated at tail mass < 1e-12.
Pmf pmf(const SystemConfig& cfg, const numerics::QuadratureSpec& spec = {});

}  // namespace mmtc::crs
