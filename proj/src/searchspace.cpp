#include "mmtc/searchspace.hpp"

#include <algorithm>
#include <cmath>

#include "mmtc/numerics.hpp"

namespace mmtc::searchspace {

namespace {

BigInt big_binomial(unsigned n, unsigned k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  BigInt c = 1;
  for (unsigned i = 1; i <= k; ++i) {
    c *= (n - k + i);
    c /= i;
  }
  return c;
}

// Visits all k-subsets of {0, .., n-1}.
void for_each_subset(unsigned n, unsigned k,
                     const std::function<void(const std::vector<unsigned>&)>& visit) {
  std::vector<unsigned> idx(k);
  for (unsigned i = 0; i < k; ++i) idx[i] = i;
  for (;;) {
    visit(idx);
    if (k == 0) return;
    int pos = static_cast<int>(k) - 1;
    while (pos >= 0 && idx[pos] == n - k + pos) --pos;
    if (pos < 0) return;
    ++idx[pos];
    for (unsigned j = pos + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

void check_args(unsigned n) {
  if (n < 1) throw std::invalid_argument("searchspace: requires n >= 1");
}

}  // namespace

BigInt dim(unsigned k, unsigned n) {
  check_args(n);
  if (k <= n) return 1;
  if (k <= 2 * n) {
    const unsigned m = k - n;
    return big_binomial(k, 2 * n - k) * (2 * m - 1) * m;
  }
  return big_binomial(k, 2 * n) * n * (2 * n - 1);
}

double dim_log(unsigned k, unsigned n) {
  check_args(n);
  if (k <= n) return 0.0;
  if (k <= 2 * n) {
    const unsigned m = k - n;
    return numerics::log_binomial(k, 2 * n - k) +
           std::log(static_cast<double>(2 * m - 1)) +
           std::log(static_cast<double>(m));
  }
  return numerics::log_binomial(k, 2 * n) +
         std::log(static_cast<double>(n)) +
         std::log(static_cast<double>(2 * n - 1));
}

double avg_dim(double mean_load, unsigned n) {
  check_args(n);
  if (!(mean_load > 0)) throw std::invalid_argument("avg_dim: requires mean_load > 0");
  const double m = mean_load;
  const double nn = static_cast<double>(n);

  // Pr(K <= N) block.
  const double term1 = numerics::regularized_gamma_q(nn + 1.0, m);

  // Middle block: e^{-m} m^{N+1} / (6 (N-1)!) [3 1F1(1-N,3/2,-m/4)
  //                                            + m (N-1) 1F1(2-N,5/2,-m/4)].
  const double log_pre = -m + (nn + 1.0) * std::log(m) - std::log(6.0) -
                         numerics::log_gamma(nn);
  double log_bracket;
  if (n == 1) {
    log_bracket = std::log(3.0);  // 1F1(0; 3/2; z) = 1, second term vanishes
  } else {
    const double log_f1 =
        numerics::log_kummer_1f1_neg_int(1 - static_cast<long long>(n), 1.5,
                                         -m / 4.0);
    const double log_f2 =
        numerics::log_kummer_1f1_neg_int(2 - static_cast<long long>(n), 2.5,
                                         -m / 4.0);
    log_bracket = numerics::log_add_exp(
        std::log(3.0) + log_f1, std::log(m) + std::log(nn - 1.0) + log_f2);
  }
  const double term2 = std::exp(log_pre + log_bracket);

  // Tail block: (1 - e^{-m}) m^{2N} N (2N-1) / (2N)!.
  const double log_tail = std::log(-std::expm1(-m)) +
                          2.0 * nn * std::log(m) -
                          numerics::log_gamma(2.0 * nn + 1.0) + std::log(nn) +
                          std::log(2.0 * nn - 1.0);
  const double term3 = std::exp(log_tail);

  const double total = term1 + term2 + term3;
  if (!std::isfinite(total))
    throw std::overflow_error("avg_dim: value exceeds double range");
  return total;
}

double avg_dim_direct(double mean_load, unsigned n, double tail) {
  check_args(n);
  if (!(mean_load > 0)) throw std::invalid_argument("avg_dim_direct: requires mean_load > 0");
  // log Poisson pmf accumulated incrementally; stop once the upper tail of
  // the Poisson distribution falls below `tail`.
  double total = 0.0;
  double log_w = -mean_load;  // ln Poisson(0)
  double cum = 0.0;
  const double log_m = std::log(mean_load);
  for (unsigned k = 0; k < 100000000; ++k) {
    if (k > 0) log_w += log_m - std::log(static_cast<double>(k));
    const double w = std::exp(log_w);
    cum += w;
    total += std::exp(log_w + dim_log(k, n));
    if (k > mean_load && 1.0 - cum < tail) break;
  }
  return total;
}

void enumerate_allocations(unsigned k, unsigned n,
                           const std::function<void(const Allocation&)>& yield) {
  check_args(n);
  if (k > 8 || n > 4)
    throw ScaleError("enumerate_allocations: desk scale only (k <= 8, n <= 4)");

  if (k <= n) {
    Allocation alloc;
    for (unsigned i = 0; i < k; ++i) alloc.solo.push_back(i);
    yield(alloc);
    return;
  }

  const auto emit_pairings = [&](const std::vector<unsigned>& shared,
                                 Allocation base) {
    // One allocation per designated pair {x, y}; everything else pairs
    // canonically in ascending order.
    for (std::size_t a = 0; a < shared.size(); ++a) {
      for (std::size_t b = a + 1; b < shared.size(); ++b) {
        Allocation alloc = base;
        alloc.pairs.emplace_back(shared[a], shared[b]);
        std::vector<unsigned> rest;
        for (std::size_t j = 0; j < shared.size(); ++j) {
          if (j != a && j != b) rest.push_back(shared[j]);
        }
        for (std::size_t j = 0; j + 1 < rest.size(); j += 2) {
          alloc.pairs.emplace_back(rest[j], rest[j + 1]);
        }
        yield(alloc);
      }
    }
  };

  if (k <= 2 * n) {
    const unsigned solo_count = 2 * n - k;
    for_each_subset(k, solo_count, [&](const std::vector<unsigned>& solo) {
      Allocation base;
      base.solo = solo;
      std::vector<unsigned> shared;
      std::vector<bool> is_solo(k, false);
      for (const unsigned s : solo) is_solo[s] = true;
      for (unsigned i = 0; i < k; ++i)
        if (!is_solo[i]) shared.push_back(i);
      emit_pairings(shared, base);
    });
    return;
  }

  for_each_subset(k, 2 * n, [&](const std::vector<unsigned>& served) {
    Allocation base;
    std::vector<bool> is_served(k, false);
    for (const unsigned s : served) is_served[s] = true;
    for (unsigned i = 0; i < k; ++i)
      if (!is_served[i]) base.silent.push_back(i);
    emit_pairings(served, base);
  });
}

EnumerationReport enumeration_report(unsigned k, unsigned n) {
  check_args(n);
  EnumerationReport report;
  report.yielded = dim(k, n);
  const unsigned m = k <= n ? 0 : (k <= 2 * n ? k - n : n);
  report.pairing_factor = m == 0 ? BigInt(1) : BigInt(2 * m - 1) * m;
  BigInt matchings = 1;
  for (unsigned j = 3; j <= 2 * m; j += 2) matchings *= j;  // (2m-1)!!
  report.natural_matching_count = matchings;
  report.covers_all_matchings = m <= 2;
  if (m <= 1) {
    report.note = "single shared channel; both conventions coincide";
  } else if (m == 2) {
    report.note =
        "designated-pair convention counts each of the 3 matchings twice "
        "(6 = C(4,2)); all matchings are reachable";
  } else {
    report.note =
        "designated-pair convention yields (2m-1)m allocations, not the "
        "(2m-1)!! perfect matchings; completions beyond the designated pair "
        "are canonical, so some matchings are never enumerated";
  }
  return report;
}

}  // namespace mmtc::searchspace
