#pragma once

#include "mmtc/config.hpp"

namespace mmtc::optimizer {

// Power split at which the two MTDs sharing a channel are equally reliable
// (p12 = p22).  Bisection runs on the advisable region theta < a1/a2 <
// 1/(theta mu) first; if the curves do not cross there, the bracket widens
// to (0, delta).  For theta >= 1 the crossing typically sits below the
// advisable region, so the widened bracket is the common path.
struct EqualReliabilityResult {
  double a1 = 0.0;
  // p12 = p22 identically on the advisable region (no-interference limit);
  // a1 is then its midpoint.
  bool degenerate = false;
  // Whether a1 satisfies both advisable-region bounds strictly.
  bool within_advisable_region = false;
};
EqualReliabilityResult equal_reliability_a1(const SystemConfig& cfg);

enum class Objective {
  kAggregationOnly,  // expected decoded MTDs, no relay factor
  kEndToEnd,         // expected MTDs surviving aggregation and relay
};

struct MaxServedResult {
  double a1 = 0.0;
  double value = 0.0;
  bool flat = false;  // objective does not depend on a1 (sharing never occurs)
};
// Coarse 128-point grid over (0, delta) followed by golden-section
// refinement of the best cell to |da1| <= 1e-5.  RRS objective.
MaxServedResult max_served_a1(const SystemConfig& cfg, Objective objective,
                              unsigned grid_points = 128);

}  // namespace mmtc::optimizer
