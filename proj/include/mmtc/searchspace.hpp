#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "mmtc/errors.hpp"

namespace mmtc::searchspace {

using BigInt = boost::multiprecision::cpp_int;

// Number of feasible scheduling allocations of k MTDs onto n channels with
// at most two per channel:
//   1                                   for k <= n
//   C(k, 2n-k) (2(k-n)-1)(k-n)          for n < k <= 2n
//   C(k, 2n) n(2n-1)                    for k > 2n
BigInt dim(unsigned k, unsigned n);

// ln dim(k, n), for Poisson averaging without big-integer arithmetic.
double dim_log(unsigned k, unsigned n);

// Poisson average of dim over K ~ Poisson(mean_load), in closed form
// (regularized gamma + Kummer polynomials + factorial tail), evaluated in
// log space.  Must not overflow for n <= 200, mean_load <= 500.
double avg_dim(double mean_load, unsigned n);

// Direct-summation counterpart, truncated where the Poisson tail drops
// below `tail`; the central correctness oracle for avg_dim.
double avg_dim_direct(double mean_load, unsigned n, double tail = 1e-15);

// One scheduling outcome at desk scale.  `pairs[0]` is the designated pair
// that identifies the allocation; the remaining shared MTDs are paired
// canonically (ascending ids, adjacent).
struct Allocation {
  std::vector<unsigned> solo;                       // MTDs alone on a channel
  std::vector<std::pair<unsigned, unsigned>> pairs; // shared channels
  std::vector<unsigned> silent;                     // beyond 2n capacity
};

// Yields every allocation under the designated-pair convention; the stream
// cardinality equals dim(k, n) exactly.  Desk scale only (k <= 8, n <= 4).
void enumerate_allocations(unsigned k, unsigned n,
                           const std::function<void(const Allocation&)>& yield);

// Counting conventions compared; `note` documents where the designated-pair
// convention departs from full perfect-matching enumeration.
struct EnumerationReport {
  BigInt yielded;                 // equals dim(k, n)
  BigInt pairing_factor;          // (2m-1) m with m shared channels
  BigInt natural_matching_count;  // (2m-1)!! perfect matchings
  bool covers_all_matchings;      // true iff m <= 2
  std::string note;
};
EnumerationReport enumeration_report(unsigned k, unsigned n);

}  // namespace mmtc::searchspace
