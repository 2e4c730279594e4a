#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mmtc/config.hpp"

namespace mmtc::recipes {

struct RecipeOptions {
  SystemConfig base;
  std::uint64_t seed = 1;
  std::uint64_t replications = 20000;
  bool simulate = true;
  std::string out_dir = ".";

  void validate() const;
};

// Recipe names: fig-searchspace, fig-served-vs-N, fig-served-vs-phi2,
// fig-a1-vs-phi1, fig-served-vs-delta, fig-served-vs-mu, validate-all.
std::vector<std::string> recipe_names();

// Runs a recipe and writes its CSV file(s) under out_dir; returns the paths
// written.  Sweep points fan out to the worker pool; rows are emitted in
// sweep order and re-runs with the same seed are byte-identical.
std::vector<std::string> run_recipe(const std::string& name,
                                    const RecipeOptions& opts);

}  // namespace mmtc::recipes
