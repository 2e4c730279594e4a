#include "mmtc/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "mmtc/relay.hpp"
#include "mmtc/rrs.hpp"

namespace mmtc::optimizer {

namespace {

double reliability_gap(const SystemConfig& cfg, double a1) {
  const SystemConfig at = cfg.with_a1(a1);
  return rrs::p12(at) - rrs::p22(at);
}

double bisect_gap(const SystemConfig& cfg, double lo, double hi, double g_lo) {
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double g = reliability_gap(cfg, mid);
    if (std::abs(g) <= 1e-9 || hi - lo < 1e-15) return mid;
    if ((g < 0.0) == (g_lo < 0.0)) {
      lo = mid;
      g_lo = g;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

EqualReliabilityResult equal_reliability_a1(const SystemConfig& cfg) {
  cfg.validate();
  const double delta = cfg.split.delta;
  const rrs::Interval region =
      rrs::feasible_region(cfg.theta, cfg.mu, delta);
  if (region.empty())
    throw InfeasibleError(
        "equal_reliability_a1: advisable region is empty (theta^2 mu >= 1)");
  const double inset = 1e-9 * delta;
  const double lo = region.lo + inset;
  const double hi = region.hi - inset;
  const double g_lo = reliability_gap(cfg, lo);
  const double g_hi = reliability_gap(cfg, hi);
  const double g_mid = reliability_gap(cfg, 0.5 * (lo + hi));

  EqualReliabilityResult out;
  if (std::abs(g_lo) < 1e-12 && std::abs(g_hi) < 1e-12 &&
      std::abs(g_mid) < 1e-12) {
    out.a1 = 0.5 * (region.lo + region.hi);
    out.degenerate = true;
    out.within_advisable_region = true;
    return out;
  }
  if ((g_lo < 0.0) != (g_hi < 0.0)) {
    out.a1 = bisect_gap(cfg, lo, hi, g_lo);
    out.within_advisable_region = true;
    return out;
  }
  // No crossing inside the advisable region; scan the whole split range.
  const double edge = 1e-6 * delta;
  const unsigned scan_points = 2048;
  double prev_a = edge;
  double prev_g = reliability_gap(cfg, prev_a);
  for (unsigned i = 1; i <= scan_points; ++i) {
    const double a = edge + (delta - 2.0 * edge) * static_cast<double>(i) /
                                static_cast<double>(scan_points);
    const double g = reliability_gap(cfg, a);
    if ((g < 0.0) != (prev_g < 0.0)) {
      out.a1 = bisect_gap(cfg, prev_a, a, prev_g);
      out.within_advisable_region = out.a1 > region.lo && out.a1 < region.hi;
      return out;
    }
    prev_a = a;
    prev_g = g;
  }
  throw InfeasibleError(
      "equal_reliability_a1: p12 - p22 does not change sign on (0, delta)");
}

MaxServedResult max_served_a1(const SystemConfig& cfg, Objective objective,
                              unsigned grid_points) {
  cfg.validate();
  if (grid_points < 8)
    throw std::invalid_argument("max_served_a1: grid must have >= 8 points");
  const double delta = cfg.split.delta;
  const double edge = 1e-4 * delta;

  const auto value_at = [&](double a1) {
    const SystemConfig at = cfg.with_a1(a1);
    const Pmf pmf = rrs::pmf(at);
    if (objective == Objective::kAggregationOnly) return pmf.mean();
    return relay::avg_successful(at, pmf);
  };

  std::vector<double> grid(grid_points);
  std::vector<double> values(grid_points);
  double vmax = -1.0;
  double vmin = std::numeric_limits<double>::infinity();
  std::size_t best = 0;
  for (unsigned i = 0; i < grid_points; ++i) {
    grid[i] = edge + (delta - 2.0 * edge) * static_cast<double>(i) /
                         static_cast<double>(grid_points - 1);
    values[i] = value_at(grid[i]);
    if (values[i] > vmax) {
      vmax = values[i];
      best = i;
    }
    vmin = std::min(vmin, values[i]);
  }

  MaxServedResult out;
  if (vmax - vmin < 1e-12 * std::max(1.0, std::abs(vmax))) {
    out.a1 = 0.5 * delta;
    out.value = value_at(out.a1);
    out.flat = true;
    return out;
  }

  // Golden-section refinement around the best grid cell.
  double lo = grid[best == 0 ? 0 : best - 1];
  double hi = grid[std::min<std::size_t>(best + 1, grid_points - 1)];
  const double ratio = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = hi - ratio * (hi - lo);
  double x2 = lo + ratio * (hi - lo);
  double f1 = value_at(x1);
  double f2 = value_at(x2);
  while (hi - lo > 1e-5) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + ratio * (hi - lo);
      f2 = value_at(x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - ratio * (hi - lo);
      f1 = value_at(x1);
    }
  }
  out.a1 = 0.5 * (lo + hi);
  out.value = value_at(out.a1);
  if (out.value < vmax) {  // keep the grid best if refinement lost it
    out.a1 = grid[best];
    out.value = vmax;
  }
  return out;
}

}  // namespace mmtc::optimizer
