#include "mmtc/crs.hpp"

#include <algorithm>
#include <cmath>

#include "mmtc/numerics.hpp"
#include "mmtc/rrs.hpp"

namespace mmtc::crs {

namespace {

using numerics::digamma;

PowerSplit split_of(const CrsContext& ctx, const SystemConfig& cfg) {
  return ctx.split_override ? *ctx.split_override : cfg.split;
}

}  // namespace

void CrsContext::validate(const SystemConfig& cfg, bool paired) const {
  if (rank < 1 || rank > population)
    throw ValidationError("CrsContext: requires 1 <= rank <= population");
  if (paired && rank + cfg.channels > population)
    throw ValidationError("CrsContext: paired channel needs rank + N <= population");
  if (split_override) split_override->validate();
}

double b_coefficient(const CrsContext& ctx, unsigned j, unsigned u,
                     const SystemConfig& cfg) {
  cfg.validate();
  const bool paired = (u == 2);
  ctx.validate(cfg, paired);
  const double psi_k1 = digamma(static_cast<double>(ctx.population) + 1.0);
  const double psi_i = digamma(static_cast<double>(ctx.rank));
  if (j == 1 && u == 1) return (psi_k1 - psi_i) / cfg.theta;
  const PowerSplit split = split_of(ctx, cfg);
  const double psi_in =
      digamma(static_cast<double>(ctx.rank + cfg.channels));
  if (j == 1 && u == 2) {
    // (a1/theta) E[h_i] - a2 E[h_{i+N}] written through digammas.
    return (split.a1 / cfg.theta - split.a2) * psi_k1 + split.a2 * psi_in -
           split.a1 / cfg.theta * psi_i;
  }
  if (j == 2 && u == 2) {
    return (split.a2 / cfg.theta - cfg.mu * split.a1) * psi_k1 +
           cfg.mu * split.a1 * psi_i - split.a2 / cfg.theta * psi_in;
  }
  throw std::invalid_argument("b_coefficient: (j, u) must be (1,1), (1,2) or (2,2)");
}

double success(const CrsContext& ctx, unsigned j, unsigned u,
               const SystemConfig& cfg, const numerics::QuadratureSpec& spec) {
  const double b = b_coefficient(ctx, j, u, cfg);
  const InterferenceField field(cfg.phi1, cfg.alpha);
  return interference::cdf(field, b, spec);
}

AveragedProbs averaged_probs(const SystemConfig& cfg, unsigned k,
                             const numerics::QuadratureSpec& spec) {
  cfg.validate();
  const unsigned n = cfg.channels;
  if (k <= n)
    throw std::invalid_argument("averaged_probs: requires k > N (shared channels)");
  AveragedProbs out;
  if (k < 2 * n) {
    double acc = 0.0;
    for (unsigned i = k - n + 1; i <= n; ++i) {
      acc += success(CrsContext{i, k, {}}, 1, 1, cfg, spec);
    }
    out.p11 = acc / static_cast<double>(2 * n - k);
  }
  const unsigned pairs = std::min(k - n, n);
  double acc12 = 0.0;
  double acc22 = 0.0;
  for (unsigned i = 1; i <= pairs; ++i) {
    const CrsContext ctx{i, k, {}};
    acc12 += success(ctx, 1, 2, cfg, spec);
    acc22 += success(ctx, 2, 2, cfg, spec);
  }
  out.p12 = acc12 / static_cast<double>(pairs);
  out.p22 = acc22 / static_cast<double>(pairs);
  return out;
}

Pmf pmf(const SystemConfig& cfg, const numerics::QuadratureSpec& spec) {
  cfg.validate();
  const unsigned n = cfg.channels;
  const double m = cfg.mean_load;
  const double p1 = rrs::p11(cfg);
  Pmf out;
  out.p.assign(2 * n + 1, 0.0);

  // k <= N block: identical to the RRS closed form.
  for (unsigned k1 = 0; k1 <= n; ++k1) {
    out.p[k1] = rrs::detail::first_block(k1, n, m, p1);
  }

  const unsigned kmax = rrs::detail::poisson_truncation_point(m, 1e-12);

  if (cfg.max_per_channel == 1) {
    // OMA under ordered scheduling: the N served MTDs are the N strongest.
    double mass_above = 0.0;
    for (unsigned k = n + 1; k <= kmax; ++k) {
      const double w = rrs::detail::poisson_pmf(k, m);
      mass_above += w;
      double acc = 0.0;
      for (unsigned i = 1; i <= n; ++i) {
        acc += success(CrsContext{i, k, {}}, 1, 1, cfg, spec);
      }
      const auto bin = rrs::detail::binomial_pmf(n, acc / n);
      for (std::size_t i = 0; i < bin.size(); ++i) out.p[i] += w * bin[i];
    }
    const double pr_above = 1.0 - numerics::regularized_gamma_q(
                                      static_cast<double>(n) + 1.0, m);
    out.truncation_mass = std::max(0.0, pr_above - mass_above);
    return out;
  }

  // N < k < 2N block with rank-averaged probabilities.
  for (unsigned k = n + 1; k + 1 <= 2 * n && k <= kmax; ++k) {
    const double w = rrs::detail::poisson_pmf(k, m);
    const AveragedProbs avg = averaged_probs(cfg, k, spec);
    const auto conv = rrs::detail::convolve(
        rrs::detail::binomial_pmf(2 * n - k, *avg.p11),
        rrs::detail::convolve(rrs::detail::binomial_pmf(k - n, avg.p12),
                              rrs::detail::binomial_pmf(k - n, avg.p22)));
    for (std::size_t i = 0; i < conv.size(); ++i) out.p[i] += w * conv[i];
  }

  // k >= 2N block: rank averages still depend on k, so the Poisson weights
  // stay explicit and the sum is truncated at negligible tail mass.
  double mass_tail = 0.0;
  for (unsigned k = 2 * n; k <= kmax; ++k) {
    const double w = rrs::detail::poisson_pmf(k, m);
    mass_tail += w;
    const AveragedProbs avg = averaged_probs(cfg, k, spec);
    const auto conv =
        rrs::detail::convolve(rrs::detail::binomial_pmf(n, avg.p12),
                              rrs::detail::binomial_pmf(n, avg.p22));
    for (std::size_t i = 0; i < conv.size(); ++i) out.p[i] += w * conv[i];
  }
  const double pr_ge_2n =
      1.0 - numerics::regularized_gamma_q(2.0 * static_cast<double>(n), m);
  out.truncation_mass = std::max(0.0, pr_ge_2n - mass_tail);
  return out;
}

}  // namespace mmtc::crs
