#include "mmtc/rrs.hpp"

#include <algorithm>
#include <cmath>

#include "mmtc/numerics.hpp"

namespace mmtc::rrs {

namespace {

InterferenceField field1(const SystemConfig& cfg) {
  return InterferenceField(cfg.phi1, cfg.alpha);
}

}  // namespace

double p11(const SystemConfig& cfg) {
  cfg.validate();
  return interference::laplace(field1(cfg), cfg.theta);
}

double p12(const SystemConfig& cfg) {
  cfg.validate();
  const double a1 = cfg.split.a1;
  const double a2 = cfg.split.a2;
  if (!(a1 > 0))
    throw std::invalid_argument("p12: first-decoded MTD has no power (a1 = 0)");
  const InterferenceField field = field1(cfg);
  const double c = cfg.theta * a2 / a1;
  const double front = 2.0 * a1 / (a1 + cfg.theta * a2);
  if (c >= 1.0) return front * interference::laplace(field, cfg.theta / a1);
  const double diff = a1 - cfg.theta * a2;
  return front * interference::laplace(field, cfg.theta / a1) -
         diff / (a1 + cfg.theta * a2) *
             interference::laplace(field, 2.0 * cfg.theta / diff);
}

double p22(const SystemConfig& cfg) {
  cfg.validate();
  const double a1 = cfg.split.a1;
  const double a2 = cfg.split.a2;
  if (!(a2 > 0)) return 0.0;
  const double residual = cfg.theta * cfg.mu * a1;
  if (residual / a2 >= 1.0) return 0.0;
  const double diff = a2 - residual;
  return diff / (a2 + residual) *
         interference::laplace(field1(cfg), 2.0 * cfg.theta / diff);
}

double cdf_v1(double v, double a1, double a2, double theta) {
  if (!(a1 > 0)) throw std::invalid_argument("cdf_v1: requires a1 > 0");
  if (!(a2 >= 0) || !(theta > 0))
    throw std::invalid_argument("cdf_v1: requires a2 >= 0 and theta > 0");
  const double c = theta * a2 / a1;
  if (c < 1.0) {
    // V1 >= max (1 - c) > 0 almost surely.
    if (v <= 0.0) return 0.0;
    const double f = 1.0 - 2.0 / (1.0 + c) * std::exp(-v) +
                     (1.0 - c) / (1.0 + c) * std::exp(-2.0 * v / (1.0 - c));
    return std::clamp(f, 0.0, 1.0);
  }
  if (v >= 0.0) {
    return std::clamp(1.0 - 2.0 / (1.0 + c) * std::exp(-v), 0.0, 1.0);
  }
  if (c == 1.0) return 0.0;  // V1 = max - min >= 0
  const double m_star = -v / (c - 1.0);
  const double f = std::exp(-2.0 * m_star) -
                   2.0 / (1.0 + c) * std::exp(-v - (1.0 + c) * m_star);
  return std::clamp(f, 0.0, 1.0);
}

double cdf_v2(double v, double a1, double a2, double theta, double mu) {
  if (!(a2 > 0)) throw std::invalid_argument("cdf_v2: requires a2 > 0");
  if (!(a1 >= 0) || !(theta > 0) || !(mu >= 0))
    throw std::invalid_argument("cdf_v2: requires a1 >= 0, theta > 0, mu >= 0");
  const double c = theta * mu * a1 / a2;
  if (c < 1.0) {
    if (v >= 0.0) {
      const double f =
          1.0 - (1.0 - c) / (1.0 + c) * std::exp(-2.0 * v / (1.0 - c));
      return std::clamp(f, 0.0, 1.0);
    }
    if (c == 0.0) return 0.0;  // V2 = min > 0
    return std::clamp(2.0 * c / (1.0 + c) * std::exp(v / c), 0.0, 1.0);
  }
  // c >= 1: V2 <= 0 almost surely.
  if (v >= 0.0) return 1.0;
  if (c == 1.0) return std::clamp(std::exp(v), 0.0, 1.0);
  const double m_star = -v / (c - 1.0);
  const double survive = (1.0 - std::exp(-2.0 * m_star)) -
                         2.0 * c / (c + 1.0) * std::exp(v / c) *
                             (1.0 - std::exp(-m_star * (c + 1.0) / c));
  return std::clamp(1.0 - survive, 0.0, 1.0);
}

namespace detail {

std::vector<double> binomial_pmf(unsigned n, double p) {
  std::vector<double> out(n + 1, 0.0);
  if (n == 0) {
    out[0] = 1.0;
    return out;
  }
  if (p <= 0.0) {
    out[0] = 1.0;
    return out;
  }
  if (p >= 1.0) {
    out[n] = 1.0;
    return out;
  }
  const double lp = std::log(p);
  const double lq = std::log1p(-p);
  for (unsigned j = 0; j <= n; ++j) {
    out[j] = std::exp(numerics::log_binomial(n, j) + j * lp + (n - j) * lq);
  }
  return out;
}

std::vector<double> convolve(const std::vector<double>& a,
                             const std::vector<double>& b) {
  std::vector<double> out(a.size() + b.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0.0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

double first_block(unsigned k1, unsigned n_channels, double mean_load, double p) {
  if (k1 > n_channels) return 0.0;
  const double a = static_cast<double>(n_channels - k1) + 1.0;
  const double x = mean_load * (1.0 - p);
  const double log_q = numerics::log_regularized_gamma_q(a, std::max(x, 0.0));
  if (p <= 0.0) {
    return k1 == 0 ? std::exp(log_q) : 0.0;
  }
  const double log_mass = -mean_load * p +
                          static_cast<double>(k1) * std::log(mean_load * p) -
                          numerics::log_gamma(static_cast<double>(k1) + 1.0);
  return std::exp(log_mass + log_q);
}

unsigned poisson_truncation_point(double mean_load, double tail) {
  unsigned k = static_cast<unsigned>(std::ceil(mean_load));
  for (; k < 100000000; ++k) {
    // Upper tail Pr(K > k) = 1 - Q(k + 1, mean).
    const double lower = numerics::regularized_gamma_q(
        static_cast<double>(k) + 1.0, mean_load);
    if (1.0 - lower < tail) return k;
  }
  throw NonConvergenceError("poisson_truncation_point: tail never reached");
}

double poisson_pmf(unsigned k, double mean_load) {
  return std::exp(-mean_load + static_cast<double>(k) * std::log(mean_load) -
                  numerics::log_gamma(static_cast<double>(k) + 1.0));
}

}  // namespace detail

Pmf pmf_given_k(const SystemConfig& cfg, unsigned k) {
  cfg.validate();
  const unsigned n = cfg.channels;
  const unsigned support = 2 * n;
  Pmf out;
  out.p.assign(support + 1, 0.0);
  const double p1 = p11(cfg);
  if (cfg.max_per_channel == 1) {
    const unsigned served = std::min(k, n);
    const auto bin = detail::binomial_pmf(served, p1);
    std::copy(bin.begin(), bin.end(), out.p.begin());
    return out;
  }
  if (k == 0) {
    out.p[0] = 1.0;
    return out;
  }
  if (k <= n) {
    const auto bin = detail::binomial_pmf(k, p1);
    std::copy(bin.begin(), bin.end(), out.p.begin());
    return out;
  }
  const double q12 = p12(cfg);
  const double q22 = p22(cfg);
  std::vector<double> conv;
  if (k < 2 * n) {
    conv = detail::convolve(detail::binomial_pmf(2 * n - k, p1),
                            detail::convolve(detail::binomial_pmf(k - n, q12),
                                             detail::binomial_pmf(k - n, q22)));
  } else {
    conv = detail::convolve(detail::binomial_pmf(n, q12),
                            detail::binomial_pmf(n, q22));
  }
  for (std::size_t i = 0; i < conv.size() && i <= support; ++i) out.p[i] = conv[i];
  return out;
}

Pmf pmf_direct(const SystemConfig& cfg) {
  cfg.validate();
  const unsigned kmax = detail::poisson_truncation_point(cfg.mean_load, 1e-12);
  Pmf out;
  out.p.assign(2 * cfg.channels + 1, 0.0);
  double mass = 0.0;
  for (unsigned k = 0; k <= kmax; ++k) {
    const double w = detail::poisson_pmf(k, cfg.mean_load);
    mass += w;
    const Pmf cond = pmf_given_k(cfg, k);
    for (std::size_t i = 0; i < out.p.size(); ++i) out.p[i] += w * cond.p[i];
  }
  out.truncation_mass = std::max(0.0, 1.0 - mass);
  return out;
}

namespace {

Pmf pmf_closed(const SystemConfig& cfg) {
  const unsigned n = cfg.channels;
  const double m = cfg.mean_load;
  const double p1 = p11(cfg);
  Pmf out;
  out.p.assign(2 * n + 1, 0.0);

  if (cfg.max_per_channel == 1) {
    // OMA: K1 | K ~ Binomial(min(K, N), p11).
    const double pr_gt_n = 1.0 - numerics::regularized_gamma_q(
                                     static_cast<double>(n) + 1.0, m);
    const auto bin = detail::binomial_pmf(n, p1);
    for (unsigned k1 = 0; k1 <= n; ++k1) {
      out.p[k1] = detail::first_block(k1, n, m, p1) + pr_gt_n * bin[k1];
    }
    return out;
  }

  const double q12 = p12(cfg);
  const double q22 = p22(cfg);

  // k <= N block (Poisson-thinned closed form).
  for (unsigned k1 = 0; k1 <= n; ++k1) {
    out.p[k1] = detail::first_block(k1, n, m, p1);
  }
  // N < k < 2N block.
  for (unsigned k = n + 1; k + 1 <= 2 * n; ++k) {
    const double w = detail::poisson_pmf(k, m);
    const auto conv =
        detail::convolve(detail::binomial_pmf(2 * n - k, p1),
                         detail::convolve(detail::binomial_pmf(k - n, q12),
                                          detail::binomial_pmf(k - n, q22)));
    for (std::size_t i = 0; i < conv.size(); ++i) out.p[i] += w * conv[i];
  }
  // k >= 2N block: the conditional PMF no longer depends on k, so the
  // aggregate weight Pr(K >= 2N) = 1 - Q(2N, m) multiplies it.
  const double pr_ge_2n =
      1.0 - numerics::regularized_gamma_q(2.0 * static_cast<double>(n), m);
  const auto conv = detail::convolve(detail::binomial_pmf(n, q12),
                                     detail::binomial_pmf(n, q22));
  for (std::size_t i = 0; i < conv.size(); ++i) out.p[i] += pr_ge_2n * conv[i];
  return out;
}

}  // namespace

Pmf pmf(const SystemConfig& cfg) {
  Pmf closed = pmf_closed(cfg);
  const Pmf direct = pmf_direct(cfg);
  double max_diff = 0.0;
  for (std::size_t i = 0; i < closed.p.size(); ++i) {
    max_diff = std::max(max_diff, std::abs(closed.p[i] - direct.p[i]));
  }
  if (max_diff > 1e-8) {
    throw ConsistencyError(
        "rrs::pmf: closed form and direct Poisson mixture disagree by " +
        std::to_string(max_diff));
  }
  return closed;
}

Interval feasible_region(double theta, double mu, double delta) {
  if (!(theta > 0) || !(mu >= 0) || !(mu <= 1) || !(delta > 0))
    throw std::invalid_argument("feasible_region: invalid parameters");
  Interval out;
  if (theta * theta * mu >= 1.0) return out;  // empty
  out.lo = theta * delta / (1.0 + theta);
  out.hi = delta / (1.0 + theta * mu);
  return out;
}

}  // namespace mmtc::rrs
