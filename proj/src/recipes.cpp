#include "mmtc/recipes.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <utility>

#include "mmtc/crs.hpp"
#include "mmtc/csv.hpp"
#include "mmtc/optimizer.hpp"
#include "mmtc/parallel.hpp"
#include "mmtc/relay.hpp"
#include "mmtc/rrs.hpp"
#include "mmtc/searchspace.hpp"
#include "mmtc/sim.hpp"
#include "mmtc/validation.hpp"

namespace mmtc::recipes {

namespace {

namespace fs = std::filesystem;

using csv::format_double;

std::uint64_t point_seed(std::uint64_t seed, std::size_t point) {
  return seed ^ (0x9E3779B97F4A7C15ULL * (point + 1));
}

std::string out_path(const RecipeOptions& opts, const std::string& file) {
  fs::create_directories(opts.out_dir);
  return (fs::path(opts.out_dir) / file).string();
}

// End-to-end expected served MTDs for one scheme, analytic and simulated.
struct ServedPoint {
  double analytic_rrs = 0.0;
  double analytic_crs = 0.0;
  double analytic_oma = 0.0;
  double sim_rrs = 0.0, sim_rrs_se = 0.0;
  double sim_crs = 0.0, sim_crs_se = 0.0;
  double sim_oma = 0.0, sim_oma_se = 0.0;
};

ServedPoint served_point(const SystemConfig& cfg, const RecipeOptions& opts,
                         std::size_t point) {
  ServedPoint out;
  out.analytic_rrs = relay::avg_successful(cfg, rrs::pmf(cfg));
  out.analytic_crs = relay::avg_successful(cfg, crs::pmf(cfg));
  SystemConfig oma = cfg;
  oma.max_per_channel = 1;
  out.analytic_oma = relay::avg_successful(oma, rrs::pmf(oma));
  if (opts.simulate) {
    sim::SimSpec spec;
    spec.cfg = cfg;
    spec.replications = opts.replications;
    spec.base_seed = point_seed(opts.seed, 3 * point);
    const sim::SimReport rrs_rep = sim::run(spec);
    out.sim_rrs = rrs_rep.kbar_a_and_r();
    out.sim_rrs_se = rrs_rep.kbar_a_and_r_stderr();
    spec.scheme = sim::Scheme::kCrs;
    spec.base_seed = point_seed(opts.seed, 3 * point + 1);
    const sim::SimReport crs_rep = sim::run(spec);
    out.sim_crs = crs_rep.kbar_a_and_r();
    out.sim_crs_se = crs_rep.kbar_a_and_r_stderr();
    spec.scheme = sim::Scheme::kRrs;
    spec.cfg = oma;
    spec.base_seed = point_seed(opts.seed, 3 * point + 2);
    const sim::SimReport oma_rep = sim::run(spec);
    out.sim_oma = oma_rep.kbar_a_and_r();
    out.sim_oma_se = oma_rep.kbar_a_and_r_stderr();
  }
  return out;
}

std::vector<std::string> served_header(const std::string& axis,
                                       bool with_tau) {
  std::vector<std::string> h{axis};
  if (with_tau) h.push_back("tau");
  for (const char* c :
       {"kbar_rrs_analytic", "kbar_crs_analytic", "kbar_oma_analytic",
        "kbar_rrs_sim", "kbar_rrs_sim_stderr", "kbar_crs_sim",
        "kbar_crs_sim_stderr", "kbar_oma_sim", "kbar_oma_sim_stderr"}) {
    h.push_back(c);
  }
  return h;
}

void append_served_cells(std::vector<std::string>& row, const ServedPoint& p) {
  row.push_back(format_double(p.analytic_rrs));
  row.push_back(format_double(p.analytic_crs));
  row.push_back(format_double(p.analytic_oma));
  row.push_back(format_double(p.sim_rrs));
  row.push_back(format_double(p.sim_rrs_se));
  row.push_back(format_double(p.sim_crs));
  row.push_back(format_double(p.sim_crs_se));
  row.push_back(format_double(p.sim_oma));
  row.push_back(format_double(p.sim_oma_se));
}

std::vector<std::string> recipe_searchspace(const RecipeOptions& opts) {
  const std::vector<double> loads{10.0, 20.0, 60.0, 120.0};
  csv::Table table({"channels", "avg_dim_mbar10", "avg_dim_mbar20",
                    "avg_dim_mbar60", "avg_dim_mbar120"});
  for (unsigned n = 5; n <= 50; ++n) {
    std::vector<std::string> row{std::to_string(n)};
    for (const double m : loads) {
      row.push_back(format_double(searchspace::avg_dim(m, n)));
    }
    table.add_row(std::move(row));
  }
  const std::string path = out_path(opts, "fig-searchspace.csv");
  table.write(path);
  return {path};
}

std::vector<std::string> recipe_served_vs_n(const RecipeOptions& opts) {
  std::vector<std::pair<double, unsigned>> points;
  for (const double tau : {0.1, 0.3}) {
    for (unsigned n = 10; n <= 60; n += 5) points.emplace_back(tau, n);
  }
  std::vector<ServedPoint> results(points.size());
  parallel_for(points.size(), [&](std::size_t i) {
    SystemConfig cfg = opts.base;
    cfg.tau = points[i].first;
    cfg.channels = points[i].second;
    results[i] = served_point(cfg, opts, i);
  });
  csv::Table table(served_header("channels", true));
  for (std::size_t i = 0; i < points.size(); ++i) {
    std::vector<std::string> row{std::to_string(points[i].second),
                                 format_double(points[i].first)};
    append_served_cells(row, results[i]);
    table.add_row(std::move(row));
  }
  const std::string path = out_path(opts, "fig-served-vs-N.csv");
  table.write(path);
  return {path};
}

std::vector<std::string> recipe_served_vs_phi2(const RecipeOptions& opts) {
  std::vector<std::pair<double, double>> points;  // (phi1_db, phi2_db)
  for (const double phi1_db : {-15.0, -5.0}) {
    for (double phi2_db = -40.0; phi2_db <= -10.0 + 1e-9; phi2_db += 2.0) {
      points.emplace_back(phi1_db, phi2_db);
    }
  }
  std::vector<ServedPoint> results(points.size());
  parallel_for(points.size(), [&](std::size_t i) {
    SystemConfig cfg = opts.base;
    cfg.phi1 = std::pow(10.0, points[i].first / 10.0);
    cfg.phi2 = std::pow(10.0, points[i].second / 10.0);
    results[i] = served_point(cfg, opts, i);
  });
  std::vector<std::string> header{"phi2_db", "phi1_db"};
  for (const char* c :
       {"kbar_rrs_analytic", "kbar_crs_analytic", "kbar_oma_analytic",
        "kbar_rrs_sim", "kbar_rrs_sim_stderr", "kbar_crs_sim",
        "kbar_crs_sim_stderr", "kbar_oma_sim", "kbar_oma_sim_stderr"}) {
    header.push_back(c);
  }
  csv::Table table(header);
  for (std::size_t i = 0; i < points.size(); ++i) {
    std::vector<std::string> row{format_double(points[i].second),
                                 format_double(points[i].first)};
    append_served_cells(row, results[i]);
    table.add_row(std::move(row));
  }
  const std::string path = out_path(opts, "fig-served-vs-phi2.csv");
  table.write(path);
  return {path};
}

std::vector<std::string> recipe_a1_vs_phi1(const RecipeOptions& opts) {
  std::vector<std::pair<double, double>> points;  // (mu, phi1_db)
  for (const double mu : {0.0, 0.1}) {
    for (double phi1_db = -20.0; phi1_db <= 0.0 + 1e-9; phi1_db += 2.0) {
      points.emplace_back(mu, phi1_db);
    }
  }
  struct Row {
    double a1_eq = std::numeric_limits<double>::quiet_NaN();
    bool degenerate = false;
    double a1_max = 0.0;
    double kbar_max = 0.0;
  };
  std::vector<Row> results(points.size());
  parallel_for(points.size(), [&](std::size_t i) {
    SystemConfig cfg = opts.base;
    cfg.mu = points[i].first;
    cfg.phi1 = std::pow(10.0, points[i].second / 10.0);
    Row row;
    try {
      const auto eq = optimizer::equal_reliability_a1(cfg);
      row.a1_eq = eq.a1;
      row.degenerate = eq.degenerate;
    } catch (const InfeasibleError&) {
      // leave NaN in the cell
    }
    const auto max_res =
        optimizer::max_served_a1(cfg, optimizer::Objective::kAggregationOnly);
    row.a1_max = max_res.a1;
    row.kbar_max = max_res.value;
    results[i] = row;
  });
  csv::Table table({"phi1_db", "mu", "a1_equal_reliability", "eq_degenerate",
                    "a1_max_kbar", "kbar_at_max"});
  for (std::size_t i = 0; i < points.size(); ++i) {
    table.add_row({format_double(points[i].second),
                   format_double(points[i].first),
                   format_double(results[i].a1_eq),
                   results[i].degenerate ? "1" : "0",
                   format_double(results[i].a1_max),
                   format_double(results[i].kbar_max)});
  }
  const std::string path = out_path(opts, "fig-a1-vs-phi1.csv");
  table.write(path);
  return {path};
}

std::vector<std::string> recipe_served_vs_delta(const RecipeOptions& opts) {
  std::vector<std::pair<double, double>> points;  // (tau, delta)
  for (const double tau : {0.1, 0.3}) {
    for (double delta = 0.25; delta <= 2.0 + 1e-9; delta += 0.25) {
      points.emplace_back(tau, delta);
    }
  }
  struct Row {
    double a1_star = 0.0;
    double kbar = 0.0;
  };
  std::vector<Row> results(points.size());
  parallel_for(points.size(), [&](std::size_t i) {
    SystemConfig cfg = opts.base;
    cfg.tau = points[i].first;
    cfg.split = PowerSplit::from_a1(points[i].second / 2.0, points[i].second);
    const auto res =
        optimizer::max_served_a1(cfg, optimizer::Objective::kEndToEnd);
    results[i] = Row{res.a1, res.value};
  });
  csv::Table table({"delta", "tau", "a1_star", "kbar_a_and_r_max"});
  for (std::size_t i = 0; i < points.size(); ++i) {
    table.add_row({format_double(points[i].second),
                   format_double(points[i].first),
                   format_double(results[i].a1_star),
                   format_double(results[i].kbar)});
  }
  const std::string path = out_path(opts, "fig-served-vs-delta.csv");
  table.write(path);
  return {path};
}

std::vector<std::string> recipe_served_vs_mu(const RecipeOptions& opts) {
  std::vector<double> mus;
  for (double mu = 0.0; mu <= 1.0 + 1e-9; mu += 0.05) mus.push_back(mu);
  std::vector<ServedPoint> results(mus.size());
  parallel_for(mus.size(), [&](std::size_t i) {
    SystemConfig cfg = opts.base;
    cfg.mu = mus[i];
    results[i] = served_point(cfg, opts, i);
  });
  csv::Table table(served_header("mu", false));
  for (std::size_t i = 0; i < mus.size(); ++i) {
    std::vector<std::string> row{format_double(mus[i])};
    append_served_cells(row, results[i]);
    table.add_row(std::move(row));
  }
  const std::string path = out_path(opts, "fig-served-vs-mu.csv");
  table.write(path);
  return {path};
}

std::vector<std::string> recipe_validate_all(const RecipeOptions& opts) {
  const auto results = validation::run_all(opts.seed, opts.replications);
  const std::string path = out_path(opts, "validate-all.csv");
  const std::string text = validation::to_csv(results);
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open for writing: " + path);
  f.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!f) throw IoError("write failed: " + path);
  bool all = true;
  for (const auto& r : results) all = all && r.pass;
  if (!all) throw ValidationError("validate-all: at least one criterion failed");
  return {path};
}

}  // namespace

void RecipeOptions::validate() const {
  base.validate();
  if (simulate && replications < 1000)
    throw ValidationError("recipes: replications must be >= 1000 when simulation is enabled");
}

std::vector<std::string> recipe_names() {
  return {"fig-searchspace",    "fig-served-vs-N",    "fig-served-vs-phi2",
          "fig-a1-vs-phi1",     "fig-served-vs-delta", "fig-served-vs-mu",
          "validate-all"};
}

std::vector<std::string> run_recipe(const std::string& name,
                                    const RecipeOptions& opts) {
  opts.validate();
  if (name == "fig-searchspace") return recipe_searchspace(opts);
  if (name == "fig-served-vs-N") return recipe_served_vs_n(opts);
  if (name == "fig-served-vs-phi2") return recipe_served_vs_phi2(opts);
  if (name == "fig-a1-vs-phi1") return recipe_a1_vs_phi1(opts);
  if (name == "fig-served-vs-delta") return recipe_served_vs_delta(opts);
  if (name == "fig-served-vs-mu") return recipe_served_vs_mu(opts);
  if (name == "validate-all") return recipe_validate_all(opts);
  throw ValidationError("unknown recipe: " + name);
}

}  // namespace mmtc::recipes
