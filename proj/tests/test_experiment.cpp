//------------------------------------------------------------------------------
//
//   Copyright 2026 The Agora Authors
//
//   Licensed under the Apache License, Version 2.0 (the "License");
//   you may not use this file except in compliance with the License.
//   You may obtain a copy of the License at
//
//       http://www.apache.org/licenses/LICENSE-2.0
//
//   Unless required by applicable law or agreed to in writing, software
//   distributed under the License is distributed on an "AS IS" BASIS,
//   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//   See the License for the specific language governing permissions and
//   limitations under the License.
//
//------------------------------------------------------------------------------

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <set>
#include <sstream>
#include <vector>

#include "agora/experiment.hpp"
#include "agora/io.hpp"

using namespace agora;
namespace fs = std::filesystem;

namespace {

ExperimentConfig small_experiment() {
  ExperimentConfig cfg;
  cfg.runs_per_population = 3;
  cfg.base_seed = 99;
  cfg.params.auctions = 300;
  cfg.params.noise.kind = NoiseKind::SymmetricStep;
  for (int p = 0; p < 2; ++p) {
    MarketConfig m;
    m.name = "pop" + std::to_string(p);
    m.value_params = ValueParams{3, -1};
    for (int b = 0; b < 3; ++b)
      m.buyers.push_back({"b" + std::to_string(b), AgentLevel::Zero, m.value_params});
    m.sellers.push_back({"s0", AgentLevel::Zero, 8, 8});
    m.sellers.push_back({"s1", AgentLevel::Zero, 8, 8});
    m.sellers.push_back({"s2", AgentLevel::One, 6, 6});
    cfg.populations.push_back(std::move(m));
  }
  return cfg;
}

fs::path scratch_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("agora_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("aggregate_of computes sample standard error") {
  const std::vector<double> v{2.0, 4.0, 6.0};
  const Aggregate a = aggregate_of(v);
  CHECK(a.mean == doctest::Approx(4.0));
  CHECK(a.se == doctest::Approx(2.0 / std::sqrt(3.0)));

  const std::vector<double> one{5.0};
  CHECK(aggregate_of(one).mean == 5.0);
  CHECK(aggregate_of(one).se == 0.0);

  const std::vector<double> none;
  CHECK(std::isnan(aggregate_of(none).mean));
}

TEST_CASE("population aggregation folds run metrics the obvious way") {
  MarketConfig m;
  m.name = "agg";
  m.price_levels = 4;
  m.buyers.push_back({"b0", AgentLevel::Zero, ValueParams{3, -1}});
  m.sellers.push_back({"s0", AgentLevel::Zero, 1, 1});

  MetricsReport a;
  a.auctions = 100;
  a.mean_price = 1.5;
  a.volatility = 0.5;
  a.distribution.mass = {0.0, 0.5, 0.5, 0.0};
  a.sellers = {SellerStats{100, 1.0, 10}};
  a.buyers = {BuyerStats{100, 3}};
  a.equilibrium_episodes = {Episode{0, 60, 1}};

  MetricsReport b = a;
  b.mean_price = 1.0;
  b.volatility = 0.0;
  b.distribution.mass = {0.0, 1.0, 0.0, 0.0};
  b.sellers = {SellerStats{100, 1.0, 20}};
  b.equilibrium_episodes = {Episode{0, 40, 1}, Episode{60, 40, 1}};

  const std::vector<MetricsReport> runs{a, b};
  const PopulationAggregate pa = aggregate_population(m, 100, runs);

  CHECK(pa.runs == 2);
  CHECK(pa.mean_price.mean == doctest::Approx(1.25));
  CHECK(pa.mean_price.se == doctest::Approx(0.25));
  CHECK(pa.volatility.mean == doctest::Approx(0.25));
  CHECK(pa.distribution_mean == std::vector<double>{0.0, 0.75, 0.25, 0.0});
  CHECK(pa.modal_price == 1);
  CHECK(pa.modal_mass.mean == doctest::Approx(0.75));
  CHECK(pa.episode_count.mean == doctest::Approx(1.5));
  CHECK(pa.episode_coverage.mean == doctest::Approx(0.7));
  CHECK(pa.seller_profit[0].mean == doctest::Approx(15.0));
  CHECK(pa.seller_win_rate[0].mean == doctest::Approx(1.0));
  CHECK(pa.seller_win_rate[0].se == 0.0);
  CHECK(pa.buyer_value[0].mean == doctest::Approx(3.0));
}

TEST_CASE("repeating an experiment reproduces the report exactly") {
  const ExperimentConfig cfg = small_experiment();
  const AggregateReport a = run_experiment(cfg, 1);
  const AggregateReport b = run_experiment(cfg, 1);
  CHECK(aggregate_equal(a, b));

  ExperimentConfig other = cfg;
  other.base_seed = 100;
  CHECK(!aggregate_equal(a, run_experiment(other, 1)));
}

TEST_CASE("threaded execution matches the serial reference") {
  const ExperimentConfig cfg = small_experiment();
  const AggregateReport serial = run_experiment(cfg, 1);
  const AggregateReport threaded = run_experiment(cfg, 4);
  CHECK(aggregate_equal(serial, threaded));
}

TEST_CASE("the hook sees every cell exactly once, with a finished simulation") {
  const ExperimentConfig cfg = small_experiment();
  std::mutex mu;
  std::set<std::pair<int, int>> cells;
  const RunHook hook = [&](int pop, int run, const Simulation& sim,
                           const RunTranscript& t, const MetricsReport& m) {
    std::lock_guard<std::mutex> lock(mu);
    CHECK(sim.auctions_run() == 300);
    CHECK(t.records.size() == 300);
    CHECK(m.auctions == 300);
    CHECK(cells.insert({pop, run}).second);
  };
  (void)run_experiment(cfg, 2, nullptr, hook);
  CHECK(cells.size() == 6);
  for (int p = 0; p < 2; ++p)
    for (int r = 0; r < 3; ++r) CHECK(cells.count({p, r}) == 1);
}

TEST_CASE("saved transcripts reproduce the report from disk") {
  const ExperimentConfig cfg = small_experiment();
  const fs::path dir = scratch_dir("roundtrip");
  PersistOptions persist;
  persist.out_dir = dir;
  persist.transcripts = true;
  const AggregateReport direct = run_experiment(cfg, 1, &persist);

  AggregateReport reread;
  for (size_t pi = 0; pi < cfg.populations.size(); ++pi) {
    std::vector<MetricsReport> runs;
    for (int r = 0; r < cfg.runs_per_population; ++r) {
      const fs::path file =
          dir / "transcripts" / transcript_filename(cfg.populations[pi].name, r);
      const LoadedTranscript lt = read_transcript_file(file, cfg);
      CHECK(lt.population_index == static_cast<int>(pi));
      CHECK(lt.transcript.seed == derive_run_seed(cfg.base_seed, pi, r));
      runs.push_back(compute_metrics(lt.transcript, cfg.populations[pi],
                                     cfg.params.equilibrium_min_len));
    }
    reread.populations.push_back(
        aggregate_population(cfg.populations[pi], cfg.params.auctions, runs));
  }
  CHECK(aggregate_equal(direct, reread));
  fs::remove_all(dir);
}

TEST_CASE("a transcript read back is the transcript that was written") {
  const ExperimentConfig cfg = small_experiment();
  const MarketConfig& m = cfg.populations[0];
  const RunTranscript t = run_simulation(m, cfg.params, 4242, cfg.params.auctions);
  const fs::path dir = scratch_dir("readback");
  const fs::path file = dir / transcript_filename(m.name, 0);
  write_transcript_file(file, t, m);
  const LoadedTranscript lt = read_transcript_file(file, cfg);
  CHECK(lt.transcript == t);
  fs::remove_all(dir);
}

TEST_CASE("transcripts from different settings are refused") {
  const ExperimentConfig cfg = small_experiment();
  const MarketConfig& m = cfg.populations[0];
  const RunTranscript t = run_simulation(m, cfg.params, 7, cfg.params.auctions);
  const fs::path dir = scratch_dir("mismatch");
  const fs::path file = dir / transcript_filename(m.name, 0);
  write_transcript_file(file, t, m);

  ExperimentConfig other = cfg;
  other.params.gamma = 0.98;
  CHECK_THROWS_AS((void)read_transcript_file(file, other), std::runtime_error);

  ExperimentConfig renamed = cfg;
  renamed.populations[0].name = "somewhere-else";
  CHECK_THROWS_AS((void)read_transcript_file(file, renamed), std::runtime_error);
  fs::remove_all(dir);
}

TEST_CASE("result tables are emitted byte-identically for the same report") {
  const ExperimentConfig cfg = small_experiment();
  const AggregateReport report = run_experiment(cfg, 1);
  const fs::path da = scratch_dir("emit_a");
  const fs::path db = scratch_dir("emit_b");
  const auto fa = emit_outputs(report, cfg, da);
  const auto fb = emit_outputs(report, cfg, db);
  REQUIRE(fa.size() == 4);
  REQUIRE(fb.size() == 4);
  for (size_t i = 0; i < fa.size(); ++i) {
    CHECK(fa[i].filename() == fb[i].filename());
    CHECK(slurp(fa[i]) == slurp(fb[i]));
  }
  const std::string summary = slurp(da / "summary.csv");
  CHECK(summary.find("pop0") != std::string::npos);
  CHECK(summary.find("pop1") != std::string::npos);
  fs::remove_all(da);
  fs::remove_all(db);
}

TEST_CASE("state snapshots list every agent with its schedules") {
  const ExperimentConfig cfg = small_experiment();
  const MarketConfig& m = cfg.populations[0];
  Simulation sim(m, cfg.params, 5);
  (void)sim.run(50);
  const fs::path dir = scratch_dir("states");
  const fs::path file = dir / "pop0_run0.json";
  write_states_file(file, sim);
  const std::string text = slurp(file);
  CHECK(text.find("\"b0\"") != std::string::npos);
  CHECK(text.find("\"s2\"") != std::string::npos);
  CHECK(text.find("rival_bids_by_seller") != std::string::npos);
  fs::remove_all(dir);
}

TEST_CASE("zero-auction experiments aggregate to NaN price statistics") {
  ExperimentConfig cfg = small_experiment();
  cfg.params.auctions = 0;
  cfg.runs_per_population = 2;
  const AggregateReport report = run_experiment(cfg, 1);
  REQUIRE(report.populations.size() == 2);
  CHECK(std::isnan(report.populations[0].mean_price.mean));
  CHECK(report.populations[0].modal_price == -1);
  CHECK(aggregate_equal(report, run_experiment(cfg, 1)));
}
