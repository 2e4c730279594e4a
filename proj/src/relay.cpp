#include "mmtc/relay.hpp"

#include <cmath>

#include "mmtc/crs.hpp"
#include "mmtc/interference.hpp"
#include "mmtc/rrs.hpp"

namespace mmtc::relay {

double relay_success(const SystemConfig& cfg, unsigned k1) {
  cfg.validate();
  if (k1 == 0 || cfg.tau == 0.0) return 1.0;
  const double threshold = std::exp2(cfg.tau * static_cast<double>(k1)) - 1.0;
  if (!std::isfinite(threshold)) return 0.0;
  return interference::laplace(InterferenceField(cfg.phi2, cfg.alpha), threshold);
}

double avg_successful(const SystemConfig& cfg, const Pmf& pmf) {
  double acc = 0.0;
  for (std::size_t k1 = 1; k1 < pmf.p.size(); ++k1) {
    acc += static_cast<double>(k1) * pmf.p[k1] *
           relay_success(cfg, static_cast<unsigned>(k1));
  }
  return acc;
}

double avg_successful(const SystemConfig& cfg, Scheme scheme) {
  const Pmf pmf = scheme == Scheme::kRrs ? rrs::pmf(cfg) : crs::pmf(cfg);
  return avg_successful(cfg, pmf);
}

RelayResult result(const SystemConfig& cfg, const Pmf& pmf) {
  RelayResult out;
  out.per_k1.resize(pmf.p.size());
  for (std::size_t k1 = 0; k1 < pmf.p.size(); ++k1) {
    out.per_k1[k1] = relay_success(cfg, static_cast<unsigned>(k1));
  }
  out.overall = avg_successful(cfg, pmf);
  return out;
}

}  // namespace mmtc::relay
