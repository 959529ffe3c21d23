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

#pragma once

#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "agora/auction.hpp"
#include "agora/config.hpp"
#include "agora/metrics.hpp"

namespace agora {

struct Aggregate {
  double mean = 0.0;
  double se = 0.0;  // sample standard deviation over sqrt(runs); 0 for one run
};

Aggregate aggregate_of(std::span<const double> values);

struct PopulationAggregate {
  std::string name;
  std::string group;
  int runs = 0;
  int auctions = 0;
  Aggregate mean_price;
  Aggregate volatility;
  std::vector<double> distribution_mean;  // per price, averaged across runs
  int modal_price = -1;                   // -1 when nothing transacted
  Aggregate modal_mass;
  Aggregate episode_count;
  Aggregate episode_coverage;  // fraction of auctions inside an equilibrium episode
  std::vector<Aggregate> seller_win_rate;
  std::vector<Aggregate> seller_profit;
  std::vector<Aggregate> buyer_value;
};

struct AggregateReport {
  std::vector<PopulationAggregate> populations;
};

// Exact comparison (NaN markers equal each other); determinism tests lean on it.
bool aggregate_equal(const AggregateReport& a, const AggregateReport& b);

PopulationAggregate aggregate_population(const MarketConfig& market, int auctions,
                                         std::span<const MetricsReport> runs);

struct PersistOptions {
  std::filesystem::path out_dir;
  bool transcripts = false;
  bool states = false;
};

// Called once per finished run. May fire concurrently for different
// (population, run) cells when the experiment runs parallel; implementations
// must synchronize anything they share.
using RunHook = std::function<void(int population, int run, const Simulation& sim,
                                   const RunTranscript& t, const MetricsReport& m)>;

// Execute runs_per_population runs of every population. Each run is seeded by
// derive_run_seed(base, population, run) and is fully independent, so cells
// are fanned out across `parallelism` OpenMP threads; parallelism <= 1 takes
// the plain serial loop. Results land in preassigned slots, which makes the
// report identical whichever path executed.
AggregateReport run_experiment(const ExperimentConfig& cfg, int parallelism,
                               const PersistOptions* persist = nullptr,
                               const RunHook& hook = {});

}  // namespace agora
