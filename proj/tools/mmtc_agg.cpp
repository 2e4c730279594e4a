// Command-line front end: analytical curves, Monte Carlo runs, figure
// sweeps, power-split searches and the validation suite.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "mmtc/config_io.hpp"
#include "mmtc/crs.hpp"
#include "mmtc/csv.hpp"
#include "mmtc/errors.hpp"
#include "mmtc/optimizer.hpp"
#include "mmtc/recipes.hpp"
#include "mmtc/relay.hpp"
#include "mmtc/rrs.hpp"
#include "mmtc/searchspace.hpp"
#include "mmtc/sim.hpp"
#include "mmtc/validation.hpp"

namespace {

using mmtc::csv::format_double;

struct CommonArgs {
  std::string config_path;
  std::string out_dir = ".";
  std::string scheme = "rrs";
  std::uint64_t seed = 0;
  bool seed_given = false;
  std::uint64_t replications = 0;
  bool replications_given = false;
};

mmtc::LoadedConfig load_or_default(const CommonArgs& args) {
  mmtc::LoadedConfig loaded;
  if (!args.config_path.empty()) {
    loaded = mmtc::load_config(args.config_path);
  } else {
    loaded.cfg = mmtc::validation::paper_defaults();
    loaded.seed = 1;
  }
  if (args.seed_given) loaded.seed = args.seed;
  return loaded;
}

mmtc::SystemConfig apply_scheme(mmtc::SystemConfig cfg, const std::string& scheme) {
  if (scheme == "oma") cfg.max_per_channel = 1;
  return cfg;
}

std::string out_file(const std::string& dir, const std::string& name) {
  std::filesystem::create_directories(dir);
  return (std::filesystem::path(dir) / name).string();
}

int cmd_analyze(const CommonArgs& args) {
  const auto loaded = load_or_default(args);
  const mmtc::SystemConfig cfg = apply_scheme(loaded.cfg, args.scheme);
  mmtc::Pmf pmf;
  if (args.scheme == "crs") {
    pmf = mmtc::crs::pmf(cfg);
  } else {
    pmf = mmtc::rrs::pmf(cfg);
  }
  const auto relay_res = mmtc::relay::result(cfg, pmf);

  mmtc::csv::Table table({"k1", "pmf", "relay_success"});
  for (std::size_t k1 = 0; k1 < pmf.p.size(); ++k1) {
    table.add_row({std::to_string(k1), format_double(pmf.p[k1]),
                   format_double(relay_res.per_k1[k1])});
  }
  const std::string path = out_file(args.out_dir, "analysis.csv");
  table.write(path);

  std::printf("scheme: %s\n", args.scheme.c_str());
  if (cfg.max_per_channel == 2) {
    std::printf("p11 = %s\n", format_double(mmtc::rrs::p11(cfg)).c_str());
    std::printf("p12 = %s\n", format_double(mmtc::rrs::p12(cfg)).c_str());
    std::printf("p22 = %s\n", format_double(mmtc::rrs::p22(cfg)).c_str());
  } else {
    std::printf("p11 = %s\n", format_double(mmtc::rrs::p11(cfg)).c_str());
  }
  std::printf("kbar_aggregation = %s\n", format_double(pmf.mean()).c_str());
  std::printf("kbar_a_and_r     = %s\n", format_double(relay_res.overall).c_str());
  std::printf("pmf truncation   = %s\n",
              format_double(pmf.truncation_mass).c_str());
  std::printf("wrote %s\n", path.c_str());
  return 0;
}

int cmd_simulate(const CommonArgs& args, std::uint64_t conditioned_k,
                 bool conditioned) {
  const auto loaded = load_or_default(args);
  mmtc::sim::SimSpec spec;
  spec.cfg = apply_scheme(loaded.cfg, args.scheme);
  spec.base_seed = loaded.seed;
  spec.replications = args.replications_given ? args.replications : 20000;
  if (args.scheme == "crs") spec.scheme = mmtc::sim::Scheme::kCrs;
  if (args.scheme == "opt-tiny") spec.scheme = mmtc::sim::Scheme::kOptTiny;
  if (conditioned) spec.conditioned_k = static_cast<unsigned>(conditioned_k);
  const auto report = mmtc::sim::run(spec);

  mmtc::csv::Table table({"k1", "count", "empirical_pmf", "relay_success_rate"});
  const auto pmf = report.empirical_pmf();
  for (std::size_t k1 = 0; k1 < pmf.size(); ++k1) {
    table.add_row({std::to_string(k1), std::to_string(report.k1_counts[k1]),
                   format_double(pmf[k1]),
                   format_double(report.relay_by_k1[k1].estimate())});
  }
  const std::string path = out_file(args.out_dir, "simulation.csv");
  table.write(path);

  std::printf("replications = %llu, seed = %llu\n",
              static_cast<unsigned long long>(report.replications),
              static_cast<unsigned long long>(spec.base_seed));
  std::printf("p11_hat = %s (stderr %s)\n",
              format_double(report.p11.estimate()).c_str(),
              format_double(report.p11.std_error()).c_str());
  std::printf("p12_hat = %s (stderr %s)\n",
              format_double(report.p12.estimate()).c_str(),
              format_double(report.p12.std_error()).c_str());
  std::printf("p22_hat = %s (stderr %s)\n",
              format_double(report.p22.estimate()).c_str(),
              format_double(report.p22.std_error()).c_str());
  std::printf("kbar_aggregation = %s (stderr %s)\n",
              format_double(report.kbar_agg()).c_str(),
              format_double(report.kbar_agg_stderr()).c_str());
  std::printf("kbar_a_and_r     = %s (stderr %s)\n",
              format_double(report.kbar_a_and_r()).c_str(),
              format_double(report.kbar_a_and_r_stderr()).c_str());
  std::printf("wrote %s\n", path.c_str());
  return 0;
}

int cmd_sweep(const CommonArgs& args, const std::string& recipe) {
  const auto loaded = load_or_default(args);
  mmtc::recipes::RecipeOptions opts;
  opts.base = loaded.cfg;
  opts.seed = loaded.seed;
  opts.out_dir = args.out_dir;
  if (args.replications_given) {
    opts.simulate = args.replications > 0;
    if (opts.simulate) opts.replications = args.replications;
  } else if (recipe == "validate-all") {
    opts.replications = 100000;
  }
  const auto paths = mmtc::recipes::run_recipe(recipe, opts);
  for (const auto& p : paths) std::printf("wrote %s\n", p.c_str());
  return 0;
}

int cmd_optimize(const CommonArgs& args, const std::string& objective) {
  const auto loaded = load_or_default(args);
  const mmtc::SystemConfig cfg = loaded.cfg;
  if (objective == "eq-reliability") {
    const auto res = mmtc::optimizer::equal_reliability_a1(cfg);
    std::printf("a1_star = %s\n", format_double(res.a1).c_str());
    std::printf("degenerate = %d, within_advisable_region = %d\n",
                res.degenerate ? 1 : 0, res.within_advisable_region ? 1 : 0);
    const auto at = cfg.with_a1(res.a1);
    std::printf("p12 = %s, p22 = %s\n",
                format_double(mmtc::rrs::p12(at)).c_str(),
                format_double(mmtc::rrs::p22(at)).c_str());
    return 0;
  }
  const auto obj = objective == "max-kbar"
                       ? mmtc::optimizer::Objective::kAggregationOnly
                       : mmtc::optimizer::Objective::kEndToEnd;
  const auto res = mmtc::optimizer::max_served_a1(cfg, obj);
  std::printf("a1_star = %s\n", format_double(res.a1).c_str());
  std::printf("objective_value = %s\n", format_double(res.value).c_str());
  std::printf("flat = %d\n", res.flat ? 1 : 0);
  return 0;
}

int cmd_searchspace(const CommonArgs& args) {
  const auto loaded = load_or_default(args);
  const mmtc::SystemConfig cfg = loaded.cfg;
  const double avg = mmtc::searchspace::avg_dim(cfg.mean_load, cfg.channels);
  std::printf("avg_dim(mean_load=%s, N=%u) = %s\n",
              format_double(cfg.mean_load).c_str(), cfg.channels,
              format_double(avg).c_str());
  mmtc::csv::Table table({"k", "dim"});
  for (unsigned k = 0; k <= 4 * cfg.channels; ++k) {
    table.add_row({std::to_string(k),
                   mmtc::searchspace::dim(k, cfg.channels).str()});
  }
  const std::string path = out_file(args.out_dir, "searchspace.csv");
  table.write(path);
  std::printf("wrote %s\n", path.c_str());
  if (cfg.channels <= 4) {
    const auto report = mmtc::searchspace::enumeration_report(8, cfg.channels);
    std::printf("enumeration note (k=8): %s\n", report.note.c_str());
  }
  return 0;
}

int cmd_validate(const CommonArgs& args) {
  const auto loaded = load_or_default(args);
  const std::uint64_t reps =
      args.replications_given ? args.replications : 100000;
  const auto results = mmtc::validation::run_all(loaded.seed, reps);
  const std::string text = mmtc::validation::to_csv(results);
  const std::string path = out_file(args.out_dir, "validate-all.csv");
  {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw mmtc::IoError("cannot open for writing: " + path);
    f << text;
  }
  bool all = true;
  for (const auto& res : results) {
    std::printf("[%s] criterion %d: %s (%.1fs)\n", res.pass ? "PASS" : "FAIL",
                res.id, res.name.c_str(), res.seconds);
    all = all && res.pass;
  }
  std::printf("wrote %s\n", path.c_str());
  return all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hybrid OMA-NOMA aggregation performance model"};
  app.require_subcommand(1);

  CommonArgs args;
  const auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--config", args.config_path, "JSON scenario file");
    cmd->add_option("--out", args.out_dir, "output directory");
    cmd->add_option("--seed", args.seed, "base RNG seed")
        ->each([&](const std::string&) { args.seed_given = true; });
    cmd->add_option("--replications", args.replications,
                    "Monte Carlo replication count")
        ->each([&](const std::string&) { args.replications_given = true; });
  };

  auto* analyze = app.add_subcommand("analyze", "closed-form metrics");
  add_common(analyze);
  analyze->add_option("--scheme", args.scheme, "rrs | crs | oma")
      ->check(CLI::IsMember({"rrs", "crs", "oma"}));

  auto* simulate = app.add_subcommand("simulate", "Monte Carlo run");
  add_common(simulate);
  std::uint64_t conditioned_k = 0;
  simulate->add_option("--scheme", args.scheme, "rrs | crs | oma | opt-tiny")
      ->check(CLI::IsMember({"rrs", "crs", "oma", "opt-tiny"}));
  auto* cond_opt =
      simulate->add_option("--condition-k", conditioned_k, "fix K per epoch");

  auto* sweep = app.add_subcommand("sweep", "figure recipe, one CSV per run");
  add_common(sweep);
  std::string recipe;
  sweep->add_option("recipe", recipe, "recipe name")
      ->required()
      ->check(CLI::IsMember(mmtc::recipes::recipe_names()));

  auto* optimize = app.add_subcommand("optimize", "power-split search");
  add_common(optimize);
  std::string objective = "eq-reliability";
  optimize->add_option("--objective", objective,
                       "eq-reliability | max-kbar | max-kbar-a-and-r")
      ->check(CLI::IsMember({"eq-reliability", "max-kbar", "max-kbar-a-and-r"}));

  auto* searchspace = app.add_subcommand("searchspace", "allocation counting");
  add_common(searchspace);

  auto* validate = app.add_subcommand("validate", "run every acceptance criterion");
  add_common(validate);

  CLI11_PARSE(app, argc, argv);

  try {
    if (analyze->parsed()) return cmd_analyze(args);
    if (simulate->parsed())
      return cmd_simulate(args, conditioned_k, cond_opt->count() > 0);
    if (sweep->parsed()) return cmd_sweep(args, recipe);
    if (optimize->parsed()) return cmd_optimize(args, objective);
    if (searchspace->parsed()) return cmd_searchspace(args);
    if (validate->parsed()) return cmd_validate(args);
  } catch (const mmtc::IoError& e) {
    std::fprintf(stderr, "io error: %s\n", e.what());
    return 3;
  } catch (const mmtc::NonConvergenceError& e) {
    std::fprintf(stderr, "numerical error: %s\n", e.what());
    return 2;
  } catch (const mmtc::ConsistencyError& e) {
    std::fprintf(stderr, "numerical error: %s\n", e.what());
    return 2;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "validation error: %s\n", e.what());
    return 1;
  } catch (const mmtc::InfeasibleError& e) {
    std::fprintf(stderr, "infeasible: %s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
