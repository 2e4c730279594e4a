#include "mmtc/validation.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <sstream>

#include "mmtc/crs.hpp"
#include "mmtc/csv.hpp"
#include "mmtc/interference.hpp"
#include "mmtc/optimizer.hpp"
#include "mmtc/parallel.hpp"
#include "mmtc/relay.hpp"
#include "mmtc/rng.hpp"
#include "mmtc/rrs.hpp"
#include "mmtc/searchspace.hpp"
#include "mmtc/sim.hpp"

namespace mmtc::validation {

namespace {

std::uint64_t sub_seed(std::uint64_t seed, std::uint64_t tag) {
  return seed ^ (0x9E3779B97F4A7C15ULL * (tag + 1));
}

CheckRow row_le(int crit, const std::string& metric, double measured,
                double bound, const std::string& note = "") {
  return CheckRow{crit, metric, measured, bound, "<=", measured <= bound, note};
}

CheckRow row_gt(int crit, const std::string& metric, double measured,
                double bound, const std::string& note = "") {
  return CheckRow{crit, metric, measured, bound, ">", measured > bound, note};
}

CheckRow row_ge(int crit, const std::string& metric, double measured,
                double bound, const std::string& note = "") {
  return CheckRow{crit, metric, measured, bound, ">=", measured >= bound, note};
}

CriterionResult finish(int id, const std::string& name,
                       std::vector<CheckRow> rows,
                       std::chrono::steady_clock::time_point start) {
  CriterionResult out;
  out.id = id;
  out.name = name;
  out.rows = std::move(rows);
  out.pass = true;
  for (const CheckRow& r : out.rows) out.pass = out.pass && r.pass;
  out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                              start)
                    .count();
  return out;
}

// ---------------------------------------------------------------------------
// Criterion 1: Theorem-1 cross-validation at the default configuration.

CriterionResult criterion1(std::uint64_t seed, std::uint64_t reps) {
  const auto start = std::chrono::steady_clock::now();
  const SystemConfig cfg = paper_defaults();
  std::vector<CheckRow> rows;

  sim::SimSpec paired;
  paired.cfg = cfg;
  paired.replications = reps;
  paired.base_seed = sub_seed(seed, 101);
  paired.conditioned_k = 2 * cfg.channels;  // every channel shared
  const sim::SimReport rep_paired = sim::run(paired);

  sim::SimSpec solo = paired;
  solo.base_seed = sub_seed(seed, 102);
  solo.conditioned_k = cfg.channels;  // every channel solo
  const sim::SimReport rep_solo = sim::run(solo);

  const double p11 = rrs::p11(cfg);
  const double p12 = rrs::p12(cfg);
  const double p22 = rrs::p22(cfg);
  rows.push_back(row_le(1, "abs_err_p11",
                        std::abs(rep_solo.p11.estimate() - p11),
                        3.0 * rep_solo.p11.std_error()));
  rows.push_back(row_le(1, "abs_err_p12",
                        std::abs(rep_paired.p12.estimate() - p12),
                        3.0 * rep_paired.p12.std_error()));
  rows.push_back(row_le(1, "abs_err_p22",
                        std::abs(rep_paired.p22.estimate() - p22),
                        3.0 * rep_paired.p22.std_error()));
  return finish(1, "theorem1-success-probabilities", std::move(rows), start);
}

// ---------------------------------------------------------------------------
// Criterion 2: Theorem-2 PMF, simulation TV and closed-vs-direct identity.

CriterionResult criterion2(std::uint64_t seed, std::uint64_t reps) {
  const auto start = std::chrono::steady_clock::now();
  const SystemConfig cfg = paper_defaults();
  std::vector<CheckRow> rows;

  sim::SimSpec spec;
  spec.cfg = cfg;
  spec.replications = reps;
  spec.base_seed = sub_seed(seed, 201);
  const sim::SimReport report = sim::run(spec);
  const Pmf analytic = rrs::pmf(cfg);
  rows.push_back(row_le(2, "tv_rrs_pmf",
                        total_variation(analytic.p, report.empirical_pmf()),
                        0.02));

  double worst = 0.0;
  for (unsigned n = 1; n <= 8; ++n) {
    for (const double m : {0.5, 2.0, 10.0}) {
      SystemConfig small = cfg;
      small.channels = n;
      small.mean_load = m;
      const Pmf closed = rrs::pmf(small);
      const Pmf direct = rrs::pmf_direct(small);
      for (std::size_t i = 0; i < closed.p.size(); ++i) {
        worst = std::max(worst, std::abs(closed.p[i] - direct.p[i]));
      }
    }
  }
  rows.push_back(row_le(2, "max_abs_closed_vs_direct", worst, 1e-8));
  return finish(2, "theorem2-rrs-pmf", std::move(rows), start);
}

// ---------------------------------------------------------------------------
// Criterion 3: Theorem-3/4 CRS approximation quality.

CriterionResult criterion3(std::uint64_t seed, std::uint64_t reps) {
  const auto start = std::chrono::steady_clock::now();
  const SystemConfig cfg = paper_defaults();
  std::vector<CheckRow> rows;

  sim::SimSpec spec;
  spec.cfg = cfg;
  spec.scheme = sim::Scheme::kCrs;
  spec.replications = reps;
  spec.base_seed = sub_seed(seed, 301);
  const sim::SimReport report = sim::run(spec);
  const Pmf analytic = crs::pmf(cfg);
  const double tv = total_variation(analytic.p, report.empirical_pmf());
  std::string note;
  if (tv > 0.05) {
    std::ostringstream os;
    os << "approximation gap " << csv::format_double(tv)
       << " exceeds the nominal 0.05 band";
    note = os.str();
  }
  CheckRow row = row_le(3, "tv_crs_pmf", tv, 0.10, note);
  rows.push_back(row);
  return finish(3, "theorem3-4-crs-approximation", std::move(rows), start);
}

// ---------------------------------------------------------------------------
// Criterion 4: interference law (sampler vs Gil-Pelaez CDF, Laplace points).

CriterionResult criterion4(std::uint64_t seed, std::uint64_t /*reps*/) {
  const auto start = std::chrono::steady_clock::now();
  const SystemConfig cfg = paper_defaults();
  const InterferenceField field(cfg.phi1, cfg.alpha);
  std::vector<CheckRow> rows;

  constexpr std::size_t kDraws = 1000000;
  std::vector<double> draws(kDraws);
  {
    constexpr std::size_t kBlocks = 256;
    constexpr std::size_t kPer = kDraws / kBlocks;
    parallel_for(kBlocks, [&](std::size_t blk) {
      RngStream rng(sub_seed(seed, 401), blk);
      for (std::size_t i = 0; i < kPer; ++i) {
        draws[blk * kPer + i] = interference::sample(field, rng);
      }
    });
  }

  // Empirical Laplace transform before sorting (index order is fixed).
  for (const double s : {0.25, 1.0, 4.0}) {
    double sum = 0.0;
    double sum_sq = 0.0;
    for (const double x : draws) {
      const double v = std::exp(-s * x);
      sum += v;
      sum_sq += v * v;
    }
    const double n = static_cast<double>(kDraws);
    const double mean = sum / n;
    const double sd = std::sqrt(std::max(0.0, (sum_sq - n * mean * mean) / (n - 1.0)));
    const double sigma = sd / std::sqrt(n);
    std::ostringstream metric;
    metric << "abs_err_laplace_s" << csv::format_double(s);
    rows.push_back(row_le(4, metric.str(),
                          std::abs(mean - interference::laplace(field, s)),
                          3.0 * sigma));
  }

  std::sort(draws.begin(), draws.end());
  constexpr std::size_t kGrid = 4000;
  const std::size_t stride = kDraws / kGrid;
  std::vector<double> cdf_vals(kGrid);
  parallel_for(kGrid, [&](std::size_t j) {
    cdf_vals[j] = interference::cdf(field, draws[(j + 1) * stride - 1]);
  });
  double ks = cdf_vals.front();  // left edge: F(x_min)
  ks = std::max(ks, 1.0 - cdf_vals.back());
  const double n = static_cast<double>(kDraws);
  for (std::size_t j = 0; j + 1 < kGrid; ++j) {
    const double lo_rank = static_cast<double>((j + 1) * stride) / n;
    const double hi_rank = static_cast<double>((j + 2) * stride) / n;
    ks = std::max(ks, hi_rank - cdf_vals[j]);
    ks = std::max(ks, cdf_vals[j + 1] - lo_rank);
  }
  rows.push_back(row_le(4, "ks_distance_bound", ks, 0.005));
  return finish(4, "interference-law", std::move(rows), start);
}

// ---------------------------------------------------------------------------
// Criterion 5: Appendix-A CDFs against exponential-pair sampling.

CriterionResult criterion5(std::uint64_t seed, std::uint64_t /*reps*/) {
  const auto start = std::chrono::steady_clock::now();
  std::vector<CheckRow> rows;
  constexpr std::size_t kPairs = 1000000;

  struct Case {
    const char* name;
    double a1, a2, theta, mu;
    bool v2;
  };
  const Case cases[] = {
      {"sup_v1_branch_lt1", 0.6, 0.4, 1.0, 0.0, false},   // theta a2/a1 = 2/3
      {"sup_v1_branch_ge1", 0.3, 0.7, 1.0, 0.0, false},   // theta a2/a1 = 7/3
      {"sup_v2_branch_lt1", 0.5, 0.5, 1.0, 0.1, true},    // theta mu a1/a2 = .1
      {"sup_v2_branch_ge1", 0.6, 0.4, 2.0, 0.5, true},    // theta mu a1/a2 = 1.5
  };
  int tag = 0;
  for (const Case& c : cases) {
    RngStream rng(sub_seed(seed, 501 + tag));
    ++tag;
    std::vector<double> v(kPairs);
    for (double& x : v) {
      const double h1 = rng.exponential();
      const double h2 = rng.exponential();
      const double hmax = std::max(h1, h2);
      const double hmin = std::min(h1, h2);
      x = c.v2 ? hmin - c.theta * c.mu * c.a1 / c.a2 * hmax
               : hmax - c.theta * c.a2 / c.a1 * hmin;
    }
    std::sort(v.begin(), v.end());
    constexpr std::size_t kGrid = 5000;
    const std::size_t stride = kPairs / kGrid;
    double sup = 0.0;
    double prev_rank = 0.0;
    double prev_cdf = 0.0;
    bool first = true;
    for (std::size_t j = 0; j < kGrid; ++j) {
      const std::size_t idx = (j + 1) * stride - 1;
      const double x = v[idx];
      const double f = c.v2 ? rrs::cdf_v2(x, c.a1, c.a2, c.theta, c.mu)
                            : rrs::cdf_v1(x, c.a1, c.a2, c.theta);
      const double rank = static_cast<double>(idx + 1) / static_cast<double>(kPairs);
      if (first) {
        sup = std::max(sup, f);  // left of the smallest draw
        first = false;
      } else {
        sup = std::max(sup, rank - prev_cdf);
        sup = std::max(sup, f - prev_rank);
      }
      sup = std::max(sup, std::abs(rank - f));
      prev_rank = rank;
      prev_cdf = f;
    }
    sup = std::max(sup, 1.0 - prev_cdf);
    rows.push_back(row_le(5, c.name, sup, 0.005));
  }

  // Eq. (6) second branch must be exactly zero.
  SystemConfig cfg = paper_defaults();
  cfg.mu = 0.5;
  cfg.theta = 2.0;
  cfg.split = PowerSplit::from_a1(0.6, 1.0);  // theta mu a1/a2 = 1.5 >= 1
  const double p22 = rrs::p22(cfg);
  rows.push_back(CheckRow{5, "p22_second_branch_exact_zero", p22, 0.0, "==",
                          p22 == 0.0, ""});
  return finish(5, "appendix-a-cdfs", std::move(rows), start);
}

// ---------------------------------------------------------------------------
// Criterion 6: search-space counting.

CriterionResult criterion6(std::uint64_t /*seed*/, std::uint64_t /*reps*/) {
  const auto start = std::chrono::steady_clock::now();
  std::vector<CheckRow> rows;

  bool all_match = true;
  for (unsigned n = 1; n <= 4 && all_match; ++n) {
    for (unsigned k = 0; k <= 8 && all_match; ++k) {
      std::uint64_t count = 0;
      searchspace::enumerate_allocations(
          k, n, [&](const searchspace::Allocation&) { ++count; });
      all_match = (searchspace::BigInt(count) == searchspace::dim(k, n));
    }
  }
  rows.push_back(CheckRow{6, "enumerator_matches_dim_k<=8_n<=4",
                          all_match ? 1.0 : 0.0, 1.0, "==", all_match, ""});

  double worst_rel = 0.0;
  for (unsigned n = 2; n <= 10; ++n) {
    for (const double m : {1.0, 5.0, 10.0, 20.0}) {
      const double closed = searchspace::avg_dim(m, n);
      const double direct = searchspace::avg_dim_direct(m, n);
      worst_rel = std::max(worst_rel, std::abs(closed - direct) / direct);
    }
  }
  rows.push_back(row_le(6, "avg_dim_rel_err", worst_rel, 1e-9));
  rows.push_back(row_gt(6, "avg_dim_60_30", searchspace::avg_dim(60.0, 30),
                        1e15));
  return finish(6, "search-space-combinatorics", std::move(rows), start);
}

// ---------------------------------------------------------------------------
// Criterion 7: relay success and hybrid-vs-OMA ordering.

CriterionResult criterion7(std::uint64_t seed, std::uint64_t /*reps*/) {
  const auto start = std::chrono::steady_clock::now();
  const SystemConfig cfg = paper_defaults();
  const InterferenceField field2(cfg.phi2, cfg.alpha);
  std::vector<CheckRow> rows;

  constexpr std::size_t kDraws = 1000000;
  int tag = 0;
  for (const unsigned k1 : {1u, 10u, 30u, 60u}) {
    RngStream rng(sub_seed(seed, 701 + tag));
    ++tag;
    const double threshold = std::exp2(cfg.tau * k1) - 1.0;
    std::uint64_t hits = 0;
    for (std::size_t i = 0; i < kDraws; ++i) {
      const double h = rng.exponential();
      const double interf = interference::sample(field2, rng);
      hits += (h >= threshold * interf) ? 1 : 0;
    }
    const double n = static_cast<double>(kDraws);
    const double p_hat = static_cast<double>(hits) / n;
    const double sigma = std::sqrt(p_hat * (1.0 - p_hat) / n);
    std::ostringstream metric;
    metric << "abs_err_prel_k1_" << k1;
    rows.push_back(row_le(7, metric.str(),
                          std::abs(p_hat - relay::relay_success(cfg, k1)),
                          3.0 * sigma));
  }

  SystemConfig hybrid = cfg;
  hybrid.channels = 20;
  SystemConfig oma = hybrid;
  oma.max_per_channel = 1;
  const double kbar_hybrid = relay::avg_successful(hybrid, relay::Scheme::kRrs);
  const double kbar_oma = relay::avg_successful(oma, relay::Scheme::kRrs);
  rows.push_back(row_gt(7, "kbar_hybrid_minus_oma", kbar_hybrid - kbar_oma, 0.0,
                        "N=20, mean load 60, tau=0.2"));
  return finish(7, "relay-and-overall-metric", std::move(rows), start);
}

// ---------------------------------------------------------------------------
// Criterion 8: power-split search reproductions.

CriterionResult criterion8(std::uint64_t /*seed*/, std::uint64_t /*reps*/) {
  const auto start = std::chrono::steady_clock::now();
  std::vector<CheckRow> rows;

  SystemConfig cfg = paper_defaults();
  double prev = 2.0;
  int idx = 0;
  for (const double phi1 : {std::pow(10.0, -1.5), 0.1, std::pow(10.0, -0.5)}) {
    cfg.phi1 = phi1;
    const auto res = optimizer::equal_reliability_a1(cfg);
    std::ostringstream metric;
    metric << "eq_reliability_decreasing_step" << idx;
    if (idx > 0) {
      rows.push_back(CheckRow{8, metric.str(), res.a1, prev, "<",
                              res.a1 < prev, ""});
    }
    prev = res.a1;
    ++idx;
  }

  cfg = paper_defaults();
  cfg.phi1 = 1.0;
  const auto max_res =
      optimizer::max_served_a1(cfg, optimizer::Objective::kAggregationOnly);
  rows.push_back(row_ge(8, "max_kbar_a1_at_phi1_1", max_res.a1,
                        0.95 * cfg.split.delta, "OMA degeneration"));

  cfg = paper_defaults();
  cfg.tau = 0.1;
  double prev_value = -1.0;
  idx = 0;
  for (const double delta : {0.25, 0.5, 1.0, 2.0}) {
    cfg.split = PowerSplit::from_a1(delta / 2.0, delta);
    const auto res = optimizer::max_served_a1(cfg, optimizer::Objective::kEndToEnd);
    if (idx > 0) {
      std::ostringstream metric;
      metric << "kbar_nondecreasing_in_delta_step" << idx;
      rows.push_back(row_ge(8, metric.str(), res.value, prev_value, ""));
    }
    prev_value = res.value;
    ++idx;
  }
  return finish(8, "power-split-searches", std::move(rows), start);
}

}  // namespace

SystemConfig paper_defaults() {
  SystemConfig cfg;
  cfg.mean_load = 60.0;
  cfg.channels = 30;
  cfg.max_per_channel = 2;
  cfg.alpha = 3.6;
  cfg.mu = 0.1;
  cfg.theta = 1.0;
  cfg.tau = 0.2;
  cfg.phi1 = std::pow(10.0, -1.0);
  cfg.phi2 = std::pow(10.0, -2.6);
  cfg.split = PowerSplit::from_a1(0.5, 1.0);
  return cfg;
}

std::vector<CriterionResult> run_core(std::uint64_t seed,
                                      std::uint64_t replications) {
  std::vector<CriterionResult> out;
  out.push_back(criterion1(seed, replications));
  out.push_back(criterion2(seed, replications));
  out.push_back(criterion3(seed, replications));
  out.push_back(criterion4(seed, replications));
  out.push_back(criterion5(seed, replications));
  out.push_back(criterion6(seed, replications));
  out.push_back(criterion7(seed, replications));
  out.push_back(criterion8(seed, replications));
  return out;
}

std::vector<CriterionResult> run_all(std::uint64_t seed,
                                     std::uint64_t replications) {
  const auto start = std::chrono::steady_clock::now();
  const unsigned restore = 0;
  set_worker_count(1);
  std::vector<CriterionResult> single = run_core(seed, replications);
  set_worker_count(restore);
  std::vector<CriterionResult> parallel = run_core(seed, replications);

  const std::string text_single = to_csv(single);
  const std::string text_parallel = to_csv(parallel);
  const bool identical = text_single == text_parallel;

  CriterionResult det;
  det.id = 9;
  det.name = "determinism";
  det.rows.push_back(CheckRow{9, "csv_identical_across_worker_counts",
                              identical ? 1.0 : 0.0, 1.0, "==", identical,
                              "workers 1 vs default"});
  det.pass = identical;
  det.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();

  std::vector<CriterionResult> out = std::move(parallel);
  out.push_back(std::move(det));
  return out;
}

std::string to_csv(const std::vector<CriterionResult>& results) {
  csv::Table table({"criterion", "name", "metric", "measured", "comparison",
                    "bound", "pass", "note"});
  for (const CriterionResult& res : results) {
    for (const CheckRow& row : res.rows) {
      table.add_row({std::to_string(row.criterion), res.name, row.metric,
                     csv::format_double(row.measured), row.comparison,
                     csv::format_double(row.bound), row.pass ? "1" : "0",
                     row.note});
    }
  }
  return table.serialize();
}

}  // namespace mmtc::validation
