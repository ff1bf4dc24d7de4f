#include <clocale>
#include <locale>
#include <sstream>
#include <string>
#include <vector>

#include <doctest.h>

#include "d2dsim/bidding.hpp"
#include "d2dsim/config_io.hpp"
#include "d2dsim/evaluation.hpp"
#include "d2dsim/report.hpp"
#include "d2dsim/snapshot.hpp"

using namespace d2dsim;

namespace {

// numpunct facet that would corrupt numeric output if any formatting were
// locale-sensitive
struct CommaDecimal : std::numpunct<char> {
  char do_decimal_point() const override { return ','; }
  char do_thousands_sep() const override { return '.'; }
  std::string do_grouping() const override { return "\3"; }
};

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("empty document yields the reference defaults") {
  const ExperimentConfig config = parse_config("");
  CHECK(config.window.x_min == -5.0);
  CHECK(config.window.x_max == 5.0);
  CHECK(config.window.boundary == BoundaryMode::kPlain);
  CHECK(config.lambda_t == 3.0);
  CHECK(config.lambda_r == 3.0);
  CHECK(config.catalog_size == 100);
  CHECK(config.cache_size == 10);
  CHECK(config.gamma_r == 5.0);
  CHECK(config.gamma_c == 2.5);
  CHECK(config.channel.alpha == 4.0);
  CHECK(config.channel.mu == 1.0);
  CHECK(config.channel.noise_power == 10.0);
  CHECK(config.channel.sinr_threshold == 0.01);
  CHECK(config.channel.bandwidth == 1.0);
  CHECK(config.r_d2d_mode == RangeMode::kNoiseLimited);
  CHECK(config.scoring_mode == ScoringMode::kExact);
  CHECK(config.policies.size() == 4);
  CHECK(config.pa_grid.size() == 10);
  CHECK_NOTHROW(config.validate());
}

TEST_CASE("validation errors name the offending field") {
  ExperimentConfig config;
  config.cache_size = 100;  // == catalog_size
  CHECK_THROWS_WITH_AS(config.validate(), "cache_size must be < catalog_size",
                       ConfigError);
  config = ExperimentConfig{};
  config.gamma_r = -1.0;
  CHECK_THROWS_WITH_AS(config.validate(), "gamma_r must be >= 0", ConfigError);
  config = ExperimentConfig{};
  config.pa_grid = {0.5, 1.2};
  CHECK_THROWS_AS(config.validate(), ConfigError);
  config = ExperimentConfig{};
  config.channel.alpha = 1.5;
  CHECK_THROWS_AS(config.validate(), ConfigError);
}

TEST_CASE("parse errors carry the line number") {
  try {
    parse_config("lambda_t = 3\nthis line is wrong\n");
    FAIL("expected a parse error");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }
  try {
    parse_config("lambda_t = 3\n\nnot_a_key = 1\n");
    FAIL("expected an unknown-key error");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
    CHECK(std::string(e.what()).find("not_a_key") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_config("lambda_t = abc\n"), ConfigError);
  CHECK_THROWS_AS(load_config("/nonexistent/path.cfg"), ConfigError);
}

TEST_CASE("comments, whitespace and overrides parse") {
  const ExperimentConfig config = parse_config(
      "# a comment\n"
      "  lambda_t =  2.5   # trailing comment\n"
      "boundary_mode = torus\n"
      "policies = matern, bidding_matern\n"
      "pa_grid = 0.2:0.6:0.2\n"
      "scoring_mode = linearized\n"
      "r_d2d_mode = fixed\n"
      "r_d2d_value = 1.25\n"
      "seed = 42\n");
  CHECK(config.lambda_t == 2.5);
  CHECK(config.window.boundary == BoundaryMode::kTorus);
  CHECK(config.policies ==
        std::vector<Policy>{Policy::kMatern, Policy::kBiddingMatern});
  REQUIRE(config.pa_grid.size() == 3);
  CHECK(config.pa_grid[0] == doctest::Approx(0.2));
  CHECK(config.pa_grid[2] == doctest::Approx(0.6));
  CHECK(config.scoring_mode == ScoringMode::kLinearized);
  CHECK(config.r_d2d_mode == RangeMode::kFixed);
  CHECK(config.r_d2d_value == 1.25);
  CHECK(config.seed == 42);
}

TEST_CASE("pa grid parsing") {
  CHECK(parse_pa_grid("0.1:1.0:0.1").size() == 10);
  CHECK(parse_pa_grid("0.2:0.2:0.1") == std::vector<double>{0.2});
  CHECK_THROWS_AS(parse_pa_grid("0.1:1.0"), ConfigError);
  CHECK_THROWS_AS(parse_pa_grid("0.5:0.1:0.1"), ConfigError);
  CHECK_THROWS_AS(parse_pa_grid("a:b:c"), ConfigError);
  CHECK_THROWS_AS(parse_policy_list("matern,junk"), ConfigError);
}

TEST_CASE("config round-trips through its document form") {
  ExperimentConfig config;
  config.window = Window{-3, 7, -2, 2, BoundaryMode::kTorus};
  config.lambda_t = 2.25;
  config.lambda_r = 0.5;
  config.catalog_size = 64;
  config.cache_size = 7;
  config.gamma_r = 0.1;
  config.gamma_c = 0.0;
  config.channel.alpha = 3.5;
  config.channel.sinr_threshold = 0.05;
  config.r_d2d_mode = RangeMode::kFixed;
  config.r_d2d_value = 0.875;
  config.scoring_mode = ScoringMode::kLinearized;
  config.policies = {Policy::kBidOrdering, Policy::kRandom};
  config.pa_grid = {0.15, 0.35, 0.95};
  config.n_realizations = 11;
  config.seed = 987654321;

  const ExperimentConfig reparsed = parse_config(config_to_document(config));
  CHECK(reparsed == config);

  const ExperimentConfig defaults;
  CHECK(parse_config(config_to_document(defaults)) == defaults);
}

TEST_CASE("metrics CSV: header, shape, round-trip, determinism") {
  ExperimentConfig config;
  config.lambda_t = 0.8;
  config.lambda_r = 0.8;
  config.catalog_size = 10;
  config.cache_size = 3;
  config.n_realizations = 8;
  config.seed = 3;
  const std::vector<double> grid{0.25, 0.5, 0.75, 1.0};
  const auto rows = sweep(config, config.policies, grid);
  REQUIRE(rows.size() == 16);

  const std::string csv = metrics_to_csv(rows);
  const std::string csv2 = metrics_to_csv(sweep(config, config.policies, grid));
  CHECK(csv == csv2);

  std::istringstream in(csv);
  std::string header;
  std::getline(in, header);
  CHECK(header == std::string(kReportHeader));

  const auto parsed = metrics_from_csv(csv);
  REQUIRE(parsed.size() == rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(parsed[i].policy == rows[i].policy);
    CHECK(parsed[i].p_access == rows[i].p_access);
    CHECK(parsed[i].mean_rate == rows[i].mean_rate);
    CHECK(parsed[i].std_err == rows[i].std_err);
    CHECK(parsed[i].n_realizations == rows[i].n_realizations);
  }

  CHECK_THROWS_AS(metrics_from_csv("bogus header\n1,2,3\n"), std::invalid_argument);
  CHECK_THROWS_AS(metrics_from_csv(std::string(kReportHeader) + "\nrandom,0.5\n"),
                  std::invalid_argument);
}

TEST_CASE("numeric output ignores the global locale") {
  const std::locale saved = std::locale::global(std::locale(std::locale::classic(),
                                                            new CommaDecimal));
  MetricsRow row;
  row.policy = Policy::kMatern;
  row.p_access = 0.25;
  row.mean_rate = 1234.5625;
  row.n_realizations = 1000;
  const std::string csv = metrics_to_csv({row});
  std::locale::global(saved);
  CHECK(csv.find("1234.5625") != std::string::npos);
  CHECK(csv.find(',') != std::string::npos);       // field separators survive
  CHECK(csv.find("1.234") == std::string::npos);   // no thousands grouping
  CHECK(csv.find("0.25") != std::string::npos);
}

TEST_CASE("plot series: grouping, column order, empty input") {
  std::vector<MetricsRow> rows;
  for (Policy policy : kAllPolicies) {
    for (int i = 0; i < 10; ++i) {
      MetricsRow r;
      r.policy = policy;
      r.p_access = 0.1 * (i + 1);
      r.mean_rate = static_cast<double>(i);
      r.std_err = 0.5;
      rows.push_back(r);
    }
  }
  // 4 policies x 10 grid points -> 40 data rows -> 4 series of 10
  const std::string csv = metrics_to_csv(rows);
  std::size_t lines = 0;
  for (char c : csv) {
    lines += c == '\n' ? 1 : 0;
  }
  CHECK(lines == 41);  // header + 40 rows
  REQUIRE(metrics_from_csv(csv).size() == 40);

  const auto series = plot_series_from_rows(rows);
  REQUIRE(series.size() == 4);
  for (const auto& s : series) {
    REQUIRE(s.points.size() == 10);
  }
  const std::string text = series_to_text(series[0]);
  CHECK(text.find("# p_A mean_rate stderr\n") != std::string::npos);
  CHECK(text.find("0.1 0 0.5\n") != std::string::npos);

  CHECK(plot_series_from_rows({}).empty());
}

TEST_CASE("snapshot round-trips losslessly") {
  RandomStream seed_rng(71);
  ExperimentConfig config;
  config.lambda_t = 0.7;
  config.lambda_r = 0.9;
  config.catalog_size = 12;
  config.cache_size = 4;
  const ZipfPmf placement(config.gamma_c, config.catalog_size);
  const ZipfPmf request_pmf(config.gamma_r, config.catalog_size);
  const SpatialRealization real = sample_realization(
      config.window, config.lambda_t, config.lambda_r, placement, request_pmf,
      config.cache_size, 555);
  REQUIRE(real.n_tx() > 0);
  REQUIRE(real.n_rx() > 0);

  const RangePair ranges = resolve_ranges(config, 0.5);
  const BidTable bids = compute_bid_table(real, ranges.r_d2d, 0.5 * config.lambda_t,
                                          config.channel, config.scoring_mode);
  RandomStream mark_rng(3);
  const MarkAssignment marks = sample_marks(real.n_tx(), mark_rng);
  const RetainedSet retained =
      thin_bidding_matern(real.transmitters, real.window, bids, marks, ranges.d_exclusion);
  const Association assoc = associate(real, retained, ranges.r_d2d);

  const SnapshotDump snap = make_snapshot(real, bids, retained, assoc, 0.5, ranges, 555);
  const std::string text = serialize_snapshot(snap);
  const SnapshotDump reparsed = parse_snapshot(text);
  CHECK(reparsed == snap);
  CHECK(serialize_snapshot(reparsed) == text);

  CHECK_THROWS_AS(parse_snapshot("not a snapshot"), std::invalid_argument);
  CHECK_THROWS_AS(parse_snapshot("D2DSIM_SNAPSHOT 1\nTX 1 2\n"), std::invalid_argument);
  try {
    parse_snapshot("D2DSIM_SNAPSHOT 1\nPOLICY matern\nTX broken\n");
    FAIL("expected a snapshot parse error");
  } catch (const std::invalid_argument& e) {
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }
}

}  // TEST_SUITE
