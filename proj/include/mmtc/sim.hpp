#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "mmtc/config.hpp"
#include "mmtc/numerics.hpp"
#include "mmtc/rng.hpp"

namespace mmtc::sim {

enum class Scheme { kRrs, kCrs, kOptTiny };

struct SimSpec {
  SystemConfig cfg;
  Scheme scheme = Scheme::kRrs;
  std::uint64_t replications = 20000;
  std::uint64_t base_seed = 1;
  // Fixes K instead of drawing it from Poisson(mean_load).
  std::optional<unsigned> conditioned_k;
  // Physically-motivated variant: a failed first decode leaves the full
  // (uncancelled) signal in the second MTD's interference.  Off by default;
  // the printed formulas carry the residual unconditionally.
  bool full_interference_on_sic_failure = false;

  void validate() const;
};

struct BernoulliCounter {
  std::uint64_t successes = 0;
  std::uint64_t trials = 0;

  void add(bool success) {
    ++trials;
    successes += success ? 1 : 0;
  }
  void add_many(std::uint64_t succ, std::uint64_t n) {
    successes += succ;
    trials += n;
  }
  double estimate() const;
  double std_error() const;
};

// One epoch, compact enough to store per replication; the report is folded
// in replication order, so results do not depend on the worker count.
struct EpochOutcome {
  unsigned k = 0;
  unsigned k1 = 0;
  bool relay_ok = false;
  std::uint16_t solo_trials = 0;
  std::uint16_t solo_successes = 0;
  std::uint16_t pair_trials = 0;
  std::uint16_t first_successes = 0;
  std::uint16_t second_successes = 0;
  // Rank-resolved outcomes (bit i-1 = rank i), recorded when N <= 64.
  std::uint64_t rank_solo_present = 0;
  std::uint64_t rank_solo_mask = 0;
  std::uint64_t rank_pair_present = 0;
  std::uint64_t rank_first_mask = 0;
  std::uint64_t rank_second_mask = 0;
  // OPT-tiny extras.
  double obj_opt = 0.0;
  double obj_crs = 0.0;
  double obj_rrs = 0.0;
  bool opt_has_pairs = false;
  bool opt_paired_max_with_min = false;
};

struct SimReport {
  std::uint64_t replications = 0;
  unsigned channels = 0;
  BernoulliCounter p11, p12, p22;
  // Rank-indexed CRS tallies (entry i-1 = rank i); filled when N <= 64.
  std::vector<BernoulliCounter> crs_solo, crs_first, crs_second;
  std::vector<std::uint64_t> k1_counts;        // size 2N+1
  std::vector<BernoulliCounter> relay_by_k1;   // size 2N+1
  BernoulliCounter relay;
  std::uint64_t k1_sum = 0;
  std::uint64_t k1_sq_sum = 0;
  std::uint64_t k1_relay_sum = 0;
  std::uint64_t k1_relay_sq_sum = 0;
  // OPT-tiny aggregates.
  double obj_opt_sum = 0.0;
  double obj_crs_sum = 0.0;
  double obj_rrs_sum = 0.0;
  std::uint64_t opt_pair_epochs = 0;
  std::uint64_t opt_max_min_pairs = 0;

  double kbar_agg() const;
  double kbar_agg_stderr() const;
  double kbar_a_and_r() const;
  double kbar_a_and_r_stderr() const;
  std::vector<double> empirical_pmf() const;
};

// One aggregation + relay epoch on the supplied stream.
EpochOutcome run_epoch(const SimSpec& spec, RngStream& rng);

// Replications folded into a report; replication r always runs on the
// stream derived from (base_seed, r), so two runs with the same seed are
// bit-identical for any worker count.
SimReport run(const SimSpec& spec);

// Exhaustive desk-scale scheduler: per epoch, every allocation from the
// search-space enumerator is scored by its conditional expected number of
// successes (interference CDF of each SIR margin) and the best is played.
SimReport run_opt_tiny(const SimSpec& spec);

}  // namespace mmtc::sim
