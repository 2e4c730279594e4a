#pragma once

#include <cstdint>
#include <string>

#include "mmtc/config.hpp"

namespace mmtc {

struct LoadedConfig {
  SystemConfig cfg;
  std::uint64_t seed = 1;
};

// Parses a JSON scenario file.  Keys: mean_load, channels, max_per_channel,
// alpha, mu, theta, tau, phi1_db, phi2_db, delta, a1 (optional, default
// delta/2), rho (optional, inert), seed (optional).  Instead of tau the
// triple payload_bits / tx_time / bandwidth may be given (tau = b / (T W)).
// dB keys convert to linear here; unknown keys are rejected.  Parse errors
// carry line and column; invariant violations name the invariant.
LoadedConfig load_config(const std::string& path);
LoadedConfig parse_config(const std::string& text, const std::string& origin);

}  // namespace mmtc
