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

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "agora/market.hpp"

namespace agora {

enum class BuyerSchedule { RoundRobin, Random };

// Knobs shared by every run of an experiment: auction count, annealing,
// model window, perception noise, and how buyers take turns.
struct SimParams {
  int auctions = 10000;
  double eps_start = 1.0;
  double eps_min = 0.05;
  double alpha_start = 1.0;
  double alpha_min = 0.1;
  double gamma = 0.99;
  int window = 20;
  QualityNoiseModel noise{};
  BuyerSchedule schedule = BuyerSchedule::RoundRobin;
  int equilibrium_min_len = 50;
};

// One population: the agents that meet in the auctions, plus the price scale
// they trade on. Roster order is significant; it fixes transcript columns and
// all index-based bookkeeping.
struct MarketConfig {
  std::string name;
  std::string group;  // optional label, lets metrics compare subsets of populations
  int price_levels = 20;
  ValueParams value_params{};  // default for buyers without their own
  TwoLevelMode two_level_mode = TwoLevelMode::Oracle;
  std::vector<BuyerSpec> buyers;
  std::vector<SellerSpec> sellers;
};

struct ExperimentConfig {
  SimParams params;
  int runs_per_population = 100;
  std::uint64_t base_seed = 1;
  std::vector<MarketConfig> populations;
};

// Carries the offending field path, e.g. "populations[2].sellers[0].cost".
class ConfigError : public std::runtime_error {
public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Parse and fully validate. Unknown keys are rejected so typos fail loudly.
ExperimentConfig load_config(const std::filesystem::path& path);
ExperimentConfig parse_config(const nlohmann::json& j);
nlohmann::json config_to_json(const ExperimentConfig& cfg);
void validate_config(const ExperimentConfig& cfg);

// Fingerprint of one population plus the run parameters. Stamped into every
// transcript so recomputation tools can refuse mismatched inputs.
std::uint64_t config_hash(const MarketConfig& market, const SimParams& params);

// Built-in experiment definitions, runnable as-is or dumped to JSON for
// editing. Unknown names raise ConfigError.
std::vector<std::string> preset_names();
ExperimentConfig make_preset(const std::string& name);

}  // namespace agora
