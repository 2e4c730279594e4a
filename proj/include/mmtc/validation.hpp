#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mmtc/config.hpp"

namespace mmtc::validation {

struct CheckRow {
  int criterion = 0;
  std::string metric;
  double measured = 0.0;
  double bound = 0.0;
  std::string comparison;  // "<=", ">=", ">", "=="
  bool pass = false;
  std::string note;
};

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  double seconds = 0.0;
  std::vector<CheckRow> rows;
};

// The default experiment configuration of the numerical study: mean load 60,
// N = 30, alpha = 3.6, mu = 0.1, theta = 1, tau = 0.2, phi1 = -10 dB,
// phi2 = -26 dB, delta = 1, a1 = a2 = 1/2.
SystemConfig paper_defaults();

// Criteria 1..8 (cross-validation suites and qualitative reproductions).
std::vector<CriterionResult> run_core(std::uint64_t seed,
                                      std::uint64_t replications);

// All nine criteria; criterion 9 re-runs the core with one worker and with
// the default worker count and demands byte-identical serialized rows.
std::vector<CriterionResult> run_all(std::uint64_t seed,
                                     std::uint64_t replications);

std::string to_csv(const std::vector<CriterionResult>& results);

}  // namespace mmtc::validation
