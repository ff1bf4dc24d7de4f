// Command-line front end: runs a policy sweep from a config file and writes
// the metrics CSV, optional per-policy snapshots, and plot series files.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "d2dsim/bidding.hpp"
#include "d2dsim/config_io.hpp"
#include "d2dsim/evaluation.hpp"
#include "d2dsim/format.hpp"
#include "d2dsim/report.hpp"
#include "d2dsim/snapshot.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfigError = 1;
constexpr int kExitRuntimeError = 2;

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot open '" + path + "' for writing");
  }
  out << content;
  if (!out) {
    throw std::runtime_error("failed writing '" + path + "'");
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error("cannot open '" + path + "'");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// First-realization snapshot for one policy at the first grid point.
d2dsim::SnapshotDump build_snapshot(const d2dsim::ExperimentConfig& config,
                                    d2dsim::Policy policy, double p_access) {
  using namespace d2dsim;
  const std::uint64_t cell_seed =
      derive_seed(config.seed, static_cast<std::uint64_t>(policy) + 101, 1);
  const ZipfPmf placement(config.gamma_c, config.catalog_size);
  const ZipfPmf request_pmf(config.gamma_r, config.catalog_size);
  const SpatialRealization real =
      sample_realization(config.window, config.lambda_t, config.lambda_r, placement,
                         request_pmf, config.cache_size, derive_seed(cell_seed, 0, 1));
  const RangePair ranges = resolve_ranges(config, p_access);
  const double lambda_active = p_access * config.lambda_t;

  BidTable bids;
  bids.values.assign(static_cast<std::size_t>(real.n_tx()), 0.0);
  bids.mode = config.scoring_mode;
  if (policy == Policy::kBiddingMatern || policy == Policy::kBidOrdering) {
    bids = compute_bid_table(real, ranges.r_d2d, lambda_active, config.channel,
                             config.scoring_mode);
  }

  RetainedSet retained;
  RandomStream mark_rng(derive_seed(cell_seed, 0, 2));
  RandomStream coin(derive_seed(cell_seed, 0, 3));
  const MarkAssignment marks = sample_marks(real.n_tx(), mark_rng);
  switch (policy) {
    case Policy::kRandom:
      retained = thin_random(real.n_tx(), p_access, coin);
      break;
    case Policy::kMatern:
      retained = thin_matern(real.transmitters, real.window, marks, ranges.d_exclusion);
      break;
    case Policy::kBiddingMatern:
      retained = thin_bidding_matern(real.transmitters, real.window, bids, marks,
                                     ranges.d_exclusion);
      break;
    case Policy::kBidOrdering:
      retained = thin_bid_ordering(bids, p_access, marks);
      break;
  }
  const Association assoc = associate(real, retained, ranges.r_d2d);
  return make_snapshot(real, bids, retained, assoc, p_access, ranges, cell_seed);
}

int run_plotdata(const std::string& report_path, const std::string& out_dir) {
  using namespace d2dsim;
  std::vector<MetricsRow> rows;
  try {
    rows = metrics_from_csv(read_file(report_path));
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntimeError;
  }
  if (rows.empty()) {
    std::cerr << "warning: report has no data rows; nothing to emit\n";
    return kExitOk;
  }
  try {
    std::filesystem::create_directories(out_dir);
    for (const PlotSeries& series : plot_series_from_rows(rows)) {
      const std::string path = out_dir + "/" + series.policy + ".dat";
      write_file(path, series_to_text(series));
      std::cout << "wrote " << path << " (" << series.points.size() << " points)\n";
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntimeError;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  using namespace d2dsim;

  CLI::App app{"Spectral-efficiency sweep for bidding-aided Matern CSMA scheduling "
               "in D2D caching networks"};
  std::string config_path;
  std::string out_path = "report.csv";
  std::string policies_arg;
  std::string pa_grid_arg;
  std::uint64_t seed_override = 0;
  bool seed_given = false;
  bool snapshot = false;

  app.add_option("--config", config_path, "Experiment config file (key = value lines)");
  app.add_option("--out", out_path, "Output CSV path")->capture_default_str();
  auto* seed_opt = app.add_option("--seed", seed_override, "Master seed override");
  app.add_flag("--snapshot", snapshot,
               "Also write one snapshot per policy (first realization, first p_A)");
  app.add_option("--policies", policies_arg,
                 "Comma list override: random,matern,bidding_matern,bid_ordering");
  app.add_option("--pa-grid", pa_grid_arg, "MAP grid override, start:stop:step");

  std::string report_path;
  std::string plot_dir = "plotdata";
  auto* plot_cmd =
      app.add_subcommand("plotdata", "Split a report CSV into per-policy series files");
  plot_cmd->add_option("report", report_path, "Report CSV produced by a sweep")->required();
  plot_cmd->add_option("--out-dir", plot_dir, "Directory for the .dat series")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfigError;
  }
  seed_given = seed_opt->count() > 0;

  if (plot_cmd->parsed()) {
    return run_plotdata(report_path, plot_dir);
  }

  ExperimentConfig config;
  try {
    if (!config_path.empty()) {
      config = load_config(config_path);
    }
    if (seed_given) {
      config.seed = seed_override;
    }
    if (!policies_arg.empty()) {
      config.policies = parse_policy_list(policies_arg);
    }
    if (!pa_grid_arg.empty()) {
      config.pa_grid = parse_pa_grid(pa_grid_arg);
    }
    config.validate();
  } catch (const std::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfigError;
  }

  try {
    const std::vector<MetricsRow> rows = sweep(config, config.policies, config.pa_grid);
    for (const MetricsRow& row : rows) {
      std::cout << to_string(row.policy) << " p_A=" << format_double(row.p_access)
                << " mean_rate=" << format_double(row.mean_rate) << " +-"
                << format_double(row.std_err)
                << " served=" << format_double(row.served_fraction)
                << " served_only_rate=" << format_double(row.mean_rate_served) << "\n";
    }
    write_file(out_path, metrics_to_csv(rows));
    std::cout << "wrote " << out_path << " (" << rows.size() << " rows)\n";

    if (snapshot) {
      const std::string stem =
          out_path.size() > 4 && out_path.substr(out_path.size() - 4) == ".csv"
              ? out_path.substr(0, out_path.size() - 4)
              : out_path;
      for (const Policy policy : config.policies) {
        const SnapshotDump snap = build_snapshot(config, policy, config.pa_grid.front());
        const std::string path = stem + "_snapshot_" + to_string(policy) + ".txt";
        write_file(path, serialize_snapshot(snap));
        std::cout << "wrote " << path << "\n";
      }
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntimeError;
  }
  return kExitOk;
}
