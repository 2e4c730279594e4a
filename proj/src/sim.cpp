#include "mmtc/sim.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "mmtc/interference.hpp"
#include "mmtc/parallel.hpp"
#include "mmtc/searchspace.hpp"

namespace mmtc::sim {

namespace {

struct Channel {
  unsigned first = 0;   // index of the first-decoded MTD's gain
  unsigned second = 0;  // partner, when shared
  bool shared = false;
  unsigned rank = 0;    // 1-based rank of the first MTD (CRS), 0 for RRS
};

struct EpochScratch {
  std::vector<double> gains;
  std::vector<unsigned> idx;
  std::vector<Channel> channels;
};

void decode_channels(const SimSpec& spec, const InterferenceField& field1,
                     EpochScratch& ws, RngStream& rng, EpochOutcome& out) {
  const SystemConfig& cfg = spec.cfg;
  const bool track_ranks = cfg.channels <= 64;
  for (const Channel& ch : ws.channels) {
    const double interf = interference::sample(field1, rng);
    if (!ch.shared) {
      const double h = ws.gains[ch.first];
      const bool ok = h > cfg.theta * interf;
      ++out.solo_trials;
      out.solo_successes += ok ? 1 : 0;
      out.k1 += ok ? 1 : 0;
      if (ch.rank >= 1 && track_ranks) {
        out.rank_solo_present |= 1ULL << (ch.rank - 1);
        if (ok) out.rank_solo_mask |= 1ULL << (ch.rank - 1);
      }
      continue;
    }
    // First decoded is the stronger signal carrying a1; under CRS that is
    // the channel owner by construction of the ranking.
    double h_first = ws.gains[ch.first];
    double h_second = ws.gains[ch.second];
    if (h_second > h_first) std::swap(h_first, h_second);
    const double a1 = cfg.split.a1;
    const double a2 = cfg.split.a2;
    const bool ok1 = a1 * h_first > cfg.theta * (interf + a2 * h_second);
    const double residual =
        (!ok1 && spec.full_interference_on_sic_failure) ? a1 : cfg.mu * a1;
    const bool ok2 = a2 * h_second > cfg.theta * (interf + residual * h_first);
    ++out.pair_trials;
    out.first_successes += ok1 ? 1 : 0;
    out.second_successes += ok2 ? 1 : 0;
    out.k1 += (ok1 ? 1 : 0) + (ok2 ? 1 : 0);
    if (ch.rank >= 1 && track_ranks) {
      out.rank_pair_present |= 1ULL << (ch.rank - 1);
      if (ok1) out.rank_first_mask |= 1ULL << (ch.rank - 1);
      if (ok2) out.rank_second_mask |= 1ULL << (ch.rank - 1);
    }
  }
}

void relay_phase(const SystemConfig& cfg, const InterferenceField& field2,
                 RngStream& rng, EpochOutcome& out) {
  const double threshold =
      std::exp2(cfg.tau * static_cast<double>(out.k1)) - 1.0;
  if (!(threshold > 0.0)) {
    out.relay_ok = true;
    return;
  }
  if (!std::isfinite(threshold)) {
    out.relay_ok = false;
    return;
  }
  const double h = rng.exponential();
  const double interf = interference::sample(field2, rng);
  out.relay_ok = h >= threshold * interf;
}

void schedule_rrs(const SystemConfig& cfg, EpochScratch& ws, RngStream& rng,
                  unsigned k) {
  const unsigned n = cfg.channels;
  ws.idx.resize(k);
  std::iota(ws.idx.begin(), ws.idx.end(), 0u);
  if (k >= 2) rng.shuffle(ws.idx.data(), k);
  const unsigned owners = std::min(k, n);
  const unsigned partners =
      cfg.max_per_channel >= 2 && k > n ? std::min(k - n, n) : 0;
  ws.channels.clear();
  for (unsigned c = 0; c < owners; ++c) {
    Channel ch;
    ch.first = ws.idx[c];
    if (c < partners) {
      ch.shared = true;
      ch.second = ws.idx[n + c];
    }
    ws.channels.push_back(ch);
  }
}

void schedule_crs(const SystemConfig& cfg, EpochScratch& ws, unsigned k) {
  const unsigned n = cfg.channels;
  ws.idx.resize(k);
  std::iota(ws.idx.begin(), ws.idx.end(), 0u);
  std::sort(ws.idx.begin(), ws.idx.end(), [&](unsigned a, unsigned b) {
    return ws.gains[a] > ws.gains[b];
  });
  const unsigned owners = std::min(k, n);
  const unsigned partners =
      cfg.max_per_channel >= 2 && k > n ? std::min(k - n, n) : 0;
  ws.channels.clear();
  for (unsigned i = 0; i < owners; ++i) {
    Channel ch;
    ch.first = ws.idx[i];   // rank i+1
    ch.rank = i + 1;
    if (i < partners) {
      ch.shared = true;
      ch.second = ws.idx[n + i];  // rank i+1+N
    }
    ws.channels.push_back(ch);
  }
}

EpochOutcome run_epoch_impl(const SimSpec& spec, RngStream& rng,
                            EpochScratch& ws) {
  const SystemConfig& cfg = spec.cfg;
  const InterferenceField field1(cfg.phi1, cfg.alpha);
  const InterferenceField field2(cfg.phi2, cfg.alpha);
  EpochOutcome out;
  out.k = spec.conditioned_k ? *spec.conditioned_k : rng.poisson(cfg.mean_load);
  ws.gains.resize(out.k);
  for (double& g : ws.gains) g = rng.exponential();
  if (out.k > 0) {
    if (spec.scheme == Scheme::kCrs) {
      schedule_crs(cfg, ws, out.k);
    } else {
      schedule_rrs(cfg, ws, rng, out.k);
    }
    decode_channels(spec, field1, ws, rng, out);
  }
  relay_phase(cfg, field2, rng, out);
  return out;
}

double clamp01(double v) { return std::clamp(v, 0.0, 1.0); }

// Conditional success probability of each scheduled MTD given the realized
// gains, mixed only over the still-unknown per-channel interference.
double allocation_objective(const searchspace::Allocation& alloc,
                            const std::vector<double>& gains,
                            const SystemConfig& cfg,
                            const InterferenceField& field1,
                            const numerics::QuadratureSpec& quad) {
  double total = 0.0;
  for (const unsigned id : alloc.solo) {
    total += interference::cdf(field1, gains[id] / cfg.theta, quad);
  }
  for (const auto& [x, y] : alloc.pairs) {
    const double hmax = std::max(gains[x], gains[y]);
    const double hmin = std::min(gains[x], gains[y]);
    total += interference::cdf(
        field1, cfg.split.a1 * hmax / cfg.theta - cfg.split.a2 * hmin, quad);
    total += interference::cdf(
        field1,
        cfg.split.a2 * hmin / cfg.theta - cfg.mu * cfg.split.a1 * hmax, quad);
  }
  return total;
}

searchspace::Allocation crs_allocation(const std::vector<double>& gains,
                                       unsigned n) {
  const unsigned k = static_cast<unsigned>(gains.size());
  std::vector<unsigned> order(k);
  std::iota(order.begin(), order.end(), 0u);
  std::sort(order.begin(), order.end(),
            [&](unsigned a, unsigned b) { return gains[a] > gains[b]; });
  searchspace::Allocation alloc;
  const unsigned owners = std::min(k, n);
  const unsigned partners = k > n ? std::min(k - n, n) : 0;
  for (unsigned i = 0; i < owners; ++i) {
    if (i < partners) {
      alloc.pairs.emplace_back(order[i], order[n + i]);
    } else {
      alloc.solo.push_back(order[i]);
    }
  }
  for (unsigned i = 2 * n; i < k; ++i) alloc.silent.push_back(order[i]);
  return alloc;
}

searchspace::Allocation rrs_allocation(const std::vector<double>& gains,
                                       unsigned n, RngStream& rng) {
  const unsigned k = static_cast<unsigned>(gains.size());
  std::vector<unsigned> order(k);
  std::iota(order.begin(), order.end(), 0u);
  if (k >= 2) rng.shuffle(order.data(), k);
  searchspace::Allocation alloc;
  const unsigned owners = std::min(k, n);
  const unsigned partners = k > n ? std::min(k - n, n) : 0;
  for (unsigned i = 0; i < owners; ++i) {
    if (i < partners) {
      alloc.pairs.emplace_back(order[i], order[n + i]);
    } else {
      alloc.solo.push_back(order[i]);
    }
  }
  for (unsigned i = 2 * n; i < k; ++i) alloc.silent.push_back(order[i]);
  return alloc;
}

EpochOutcome run_epoch_opt_tiny(const SimSpec& spec, RngStream& rng,
                                EpochScratch& ws) {
  const SystemConfig& cfg = spec.cfg;
  const InterferenceField field1(cfg.phi1, cfg.alpha);
  const InterferenceField field2(cfg.phi2, cfg.alpha);
  const numerics::QuadratureSpec quad;
  EpochOutcome out;
  out.k = spec.conditioned_k ? *spec.conditioned_k
                             : rng.poisson_truncated(cfg.mean_load, 8);
  ws.gains.resize(out.k);
  for (double& g : ws.gains) g = rng.exponential();

  if (out.k > 0) {
    searchspace::Allocation best;
    double best_obj = -1.0;
    searchspace::enumerate_allocations(
        out.k, cfg.channels, [&](const searchspace::Allocation& alloc) {
          const double obj =
              allocation_objective(alloc, ws.gains, cfg, field1, quad);
          if (obj > best_obj) {
            best_obj = obj;
            best = alloc;
          }
        });
    out.obj_opt = best_obj;
    out.obj_crs = allocation_objective(crs_allocation(ws.gains, cfg.channels),
                                       ws.gains, cfg, field1, quad);
    out.obj_rrs = allocation_objective(
        rrs_allocation(ws.gains, cfg.channels, rng), ws.gains, cfg, field1, quad);
    out.opt_has_pairs = !best.pairs.empty();
    if (out.opt_has_pairs && out.k >= 2) {
      const auto minmax = std::minmax_element(ws.gains.begin(), ws.gains.end());
      const unsigned weakest =
          static_cast<unsigned>(minmax.first - ws.gains.begin());
      const unsigned strongest =
          static_cast<unsigned>(minmax.second - ws.gains.begin());
      for (const auto& [x, y] : best.pairs) {
        if ((x == strongest && y == weakest) || (x == weakest && y == strongest))
          out.opt_paired_max_with_min = true;
      }
    }
    // Play the chosen allocation.
    ws.channels.clear();
    for (const unsigned id : best.solo) {
      Channel ch;
      ch.first = id;
      ws.channels.push_back(ch);
    }
    for (const auto& [x, y] : best.pairs) {
      Channel ch;
      ch.first = x;
      ch.second = y;
      ch.shared = true;
      ws.channels.push_back(ch);
    }
    decode_channels(spec, field1, ws, rng, out);
  }
  relay_phase(cfg, field2, rng, out);
  return out;
}

void fold(SimReport& report, const EpochOutcome& out, bool track_ranks) {
  report.p11.add_many(out.solo_successes, out.solo_trials);
  report.p12.add_many(out.first_successes, out.pair_trials);
  report.p22.add_many(out.second_successes, out.pair_trials);
  if (track_ranks) {
    for (unsigned r = 0; r < report.channels; ++r) {
      const std::uint64_t bit = 1ULL << r;
      if (out.rank_solo_present & bit)
        report.crs_solo[r].add((out.rank_solo_mask & bit) != 0);
      if (out.rank_pair_present & bit) {
        report.crs_first[r].add((out.rank_first_mask & bit) != 0);
        report.crs_second[r].add((out.rank_second_mask & bit) != 0);
      }
    }
  }
  report.k1_counts[out.k1] += 1;
  report.relay_by_k1[out.k1].add(out.relay_ok);
  report.relay.add(out.relay_ok);
  const std::uint64_t k1 = out.k1;
  report.k1_sum += k1;
  report.k1_sq_sum += k1 * k1;
  if (out.relay_ok) {
    report.k1_relay_sum += k1;
    report.k1_relay_sq_sum += k1 * k1;
  }
  report.obj_opt_sum += out.obj_opt;
  report.obj_crs_sum += out.obj_crs;
  report.obj_rrs_sum += out.obj_rrs;
  if (out.opt_has_pairs) {
    ++report.opt_pair_epochs;
    if (out.opt_paired_max_with_min) ++report.opt_max_min_pairs;
  }
}

SimReport run_impl(const SimSpec& spec, bool opt_tiny) {
  spec.validate();
  const unsigned n = spec.cfg.channels;
  std::vector<EpochOutcome> outcomes(spec.replications);
  parallel_for(spec.replications, [&](std::size_t r) {
    thread_local EpochScratch ws;
    RngStream rng(spec.base_seed, r);
    outcomes[r] = opt_tiny ? run_epoch_opt_tiny(spec, rng, ws)
                           : run_epoch_impl(spec, rng, ws);
  });
  SimReport report;
  report.replications = spec.replications;
  report.channels = n;
  const bool track_ranks = n <= 64;
  if (track_ranks) {
    report.crs_solo.resize(n);
    report.crs_first.resize(n);
    report.crs_second.resize(n);
  }
  report.k1_counts.assign(2 * n + 1, 0);
  report.relay_by_k1.assign(2 * n + 1, BernoulliCounter{});
  for (const EpochOutcome& out : outcomes) fold(report, out, track_ranks);
  return report;
}

}  // namespace

void SimSpec::validate() const {
  cfg.validate();
  if (replications < 1) throw ValidationError("SimSpec: replications must be >= 1");
  if (scheme == Scheme::kOptTiny) {
    if (cfg.channels > 4)
      throw ValidationError("SimSpec: OPT-tiny requires N <= 4");
    if (conditioned_k && *conditioned_k > 8)
      throw ValidationError("SimSpec: OPT-tiny requires K <= 8");
  }
}

double BernoulliCounter::estimate() const {
  return trials == 0 ? 0.0
                     : static_cast<double>(successes) / static_cast<double>(trials);
}

double BernoulliCounter::std_error() const {
  if (trials == 0) return 0.0;
  const double p = estimate();
  return std::sqrt(p * (1.0 - p) / static_cast<double>(trials));
}

double SimReport::kbar_agg() const {
  return replications == 0 ? 0.0
                           : static_cast<double>(k1_sum) /
                                 static_cast<double>(replications);
}

double SimReport::kbar_agg_stderr() const {
  if (replications < 2) return 0.0;
  const double n = static_cast<double>(replications);
  const double mean = kbar_agg();
  const double var =
      (static_cast<double>(k1_sq_sum) - n * mean * mean) / (n - 1.0);
  return std::sqrt(std::max(var, 0.0) / n);
}

double SimReport::kbar_a_and_r() const {
  return replications == 0 ? 0.0
                           : static_cast<double>(k1_relay_sum) /
                                 static_cast<double>(replications);
}

double SimReport::kbar_a_and_r_stderr() const {
  if (replications < 2) return 0.0;
  const double n = static_cast<double>(replications);
  const double mean = kbar_a_and_r();
  const double var =
      (static_cast<double>(k1_relay_sq_sum) - n * mean * mean) / (n - 1.0);
  return std::sqrt(std::max(var, 0.0) / n);
}

std::vector<double> SimReport::empirical_pmf() const {
  std::vector<double> pmf(k1_counts.size(), 0.0);
  if (replications == 0) return pmf;
  for (std::size_t i = 0; i < pmf.size(); ++i) {
    pmf[i] = static_cast<double>(k1_counts[i]) /
             static_cast<double>(replications);
  }
  return pmf;
}

EpochOutcome run_epoch(const SimSpec& spec, RngStream& rng) {
  spec.validate();
  EpochScratch ws;
  return spec.scheme == Scheme::kOptTiny ? run_epoch_opt_tiny(spec, rng, ws)
                                         : run_epoch_impl(spec, rng, ws);
}

SimReport run(const SimSpec& spec) {
  if (spec.scheme == Scheme::kOptTiny) return run_impl(spec, true);
  return run_impl(spec, false);
}

SimReport run_opt_tiny(const SimSpec& spec) {
  if (spec.scheme != Scheme::kOptTiny)
    throw ValidationError("run_opt_tiny: spec.scheme must be OPT-tiny");
  return run_impl(spec, true);
}

}  // namespace mmtc::sim
