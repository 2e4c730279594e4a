#include "mmtc/config_io.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace mmtc {

namespace {

using nlohmann::json;

std::pair<std::size_t, std::size_t> line_column(const std::string& text,
                                                std::size_t byte) {
  std::size_t line = 1;
  std::size_t col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

double require_number(const json& j, const std::string& key) {
  if (!j.at(key).is_number())
    throw ValidationError("config key '" + key + "' must be a number");
  return j.at(key).get<double>();
}

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

}  // namespace

LoadedConfig parse_config(const std::string& text, const std::string& origin) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    const auto [line, col] = line_column(text, e.byte > 0 ? e.byte - 1 : 0);
    std::ostringstream msg;
    msg << origin << ":" << line << ":" << col << ": " << e.what();
    throw ValidationError(msg.str());
  }
  if (!doc.is_object()) throw ValidationError(origin + ": config must be a JSON object");

  static const std::set<std::string> known = {
      "mean_load", "channels", "max_per_channel", "alpha", "mu",
      "theta",     "tau",      "phi1_db",         "phi2_db", "delta",
      "a1",        "rho",      "seed",            "payload_bits", "tx_time",
      "bandwidth"};
  for (const auto& [key, _] : doc.items()) {
    if (!known.count(key))
      throw ValidationError(origin + ": unknown config key '" + key + "'");
  }

  LoadedConfig out;
  SystemConfig& cfg = out.cfg;
  if (doc.contains("mean_load")) cfg.mean_load = require_number(doc, "mean_load");
  if (doc.contains("channels")) {
    const double n = require_number(doc, "channels");
    if (n < 1 || n != std::floor(n))
      throw ValidationError("channels must be a positive integer");
    cfg.channels = static_cast<unsigned>(n);
  }
  if (doc.contains("max_per_channel")) {
    const double l = require_number(doc, "max_per_channel");
    if (l != 1 && l != 2) throw ValidationError("max_per_channel must be 1 or 2");
    cfg.max_per_channel = static_cast<unsigned>(l);
  }
  if (doc.contains("alpha")) cfg.alpha = require_number(doc, "alpha");
  if (doc.contains("mu")) cfg.mu = require_number(doc, "mu");
  if (doc.contains("theta")) cfg.theta = require_number(doc, "theta");
  if (doc.contains("phi1_db")) cfg.phi1 = db_to_linear(require_number(doc, "phi1_db"));
  if (doc.contains("phi2_db")) cfg.phi2 = db_to_linear(require_number(doc, "phi2_db"));
  if (doc.contains("rho")) cfg.rho = require_number(doc, "rho");

  const bool has_tau = doc.contains("tau");
  const bool has_triple = doc.contains("payload_bits") || doc.contains("tx_time") ||
                          doc.contains("bandwidth");
  if (has_tau && has_triple)
    throw ValidationError("give either tau or the payload_bits/tx_time/bandwidth triple, not both");
  if (has_tau) {
    cfg.tau = require_number(doc, "tau");
  } else if (has_triple) {
    if (!doc.contains("payload_bits") || !doc.contains("tx_time") ||
        !doc.contains("bandwidth"))
      throw ValidationError("payload_bits, tx_time and bandwidth must be given together");
    const double b = require_number(doc, "payload_bits");
    const double t = require_number(doc, "tx_time");
    const double w = require_number(doc, "bandwidth");
    if (!(b >= 0) || !(t > 0) || !(w > 0))
      throw ValidationError("relay triple must satisfy payload_bits >= 0, tx_time > 0, bandwidth > 0");
    cfg.tau = b / (t * w);
  }

  double delta = cfg.split.delta;
  if (doc.contains("delta")) delta = require_number(doc, "delta");
  if (!(delta > 0)) throw ValidationError("delta must exceed 0");
  const double a1 = doc.contains("a1") ? require_number(doc, "a1") : delta / 2.0;
  cfg.split = PowerSplit::from_a1(a1, delta);

  if (doc.contains("seed")) {
    const double s = require_number(doc, "seed");
    if (s < 0 || s != std::floor(s))
      throw ValidationError("seed must be a nonnegative integer");
    out.seed = static_cast<std::uint64_t>(s);
  }

  cfg.validate();
  return out;
}

LoadedConfig load_config(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open config file: " + path);
  std::ostringstream buf;
  buf << f.rdbuf();
  return parse_config(buf.str(), path);
}

}  // namespace mmtc
