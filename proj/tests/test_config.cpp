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

#include <string>
#include <vector>

#include "agora/config.hpp"
#include "json.hpp"

using namespace agora;
using nlohmann::json;

namespace {

json minimal_config() {
  return json::parse(R"({
    "experiment": {"runs_per_population": 2, "auctions_per_run": 100},
    "populations": [{
      "name": "tiny",
      "buyers": [{"id": "b0", "level": 0}],
      "sellers": [{"id": "s0", "level": 0, "quality": 8}]
    }]
  })");
}

std::string error_of(const json& j) {
  try {
    (void)parse_config(j);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("a minimal config parses with documented defaults") {
  const ExperimentConfig cfg = parse_config(minimal_config());
  CHECK(cfg.runs_per_population == 2);
  CHECK(cfg.params.auctions == 100);
  CHECK(cfg.base_seed == 1);
  CHECK(cfg.params.eps_start == 1.0);
  CHECK(cfg.params.eps_min == 0.05);
  CHECK(cfg.params.alpha_start == 1.0);
  CHECK(cfg.params.alpha_min == 0.1);
  CHECK(cfg.params.gamma == 0.99);
  CHECK(cfg.params.window == 20);
  CHECK(cfg.params.noise.kind == NoiseKind::SymmetricStep);
  CHECK(cfg.params.noise.step_prob == 0.5);
  CHECK(cfg.params.schedule == BuyerSchedule::RoundRobin);
  CHECK(cfg.params.equilibrium_min_len == 50);
  REQUIRE(cfg.populations.size() == 1);
  const MarketConfig& m = cfg.populations[0];
  CHECK(m.price_levels == 20);
  CHECK(m.value_params.quality_weight == 3);
  CHECK(m.value_params.price_weight == -1);
  REQUIRE(m.sellers.size() == 1);
  // Cost defaults to the configured quality.
  CHECK(m.sellers[0].cost == 8);
  CHECK(m.sellers[0].true_quality == 8);
}

TEST_CASE("unknown keys are rejected with their path") {
  json j = minimal_config();
  j["experiment"]["typo_knob"] = 3;
  CHECK(error_of(j).find("typo_knob") != std::string::npos);

  json j2 = minimal_config();
  j2["populations"][0]["sellers"][0]["costt"] = 5;
  const std::string e2 = error_of(j2);
  CHECK(e2.find("costt") != std::string::npos);
  CHECK(e2.find("sellers[0]") != std::string::npos);

  json j3 = minimal_config();
  j3["populations"][0]["surprise"] = 1;
  CHECK(error_of(j3).find("surprise") != std::string::npos);
}

TEST_CASE("wrong value shapes are named precisely") {
  json j = minimal_config();
  j["experiment"]["window"] = "wide";
  CHECK(error_of(j).find("window") != std::string::npos);

  json j2 = minimal_config();
  j2["populations"][0]["sellers"][0]["quality"] = 25;
  const std::string e = error_of(j2);
  CHECK(e.find("quality") != std::string::npos);
}

TEST_CASE("bounds are enforced") {
  json j = minimal_config();
  j["experiment"]["eps_min"] = 2.0;
  CHECK(error_of(j).find("eps_min") != std::string::npos);

  j = minimal_config();
  j["experiment"]["gamma"] = 0.0;
  CHECK(error_of(j).find("gamma") != std::string::npos);

  j = minimal_config();
  j["experiment"]["window"] = 65;
  CHECK(error_of(j).find("window") != std::string::npos);

  j = minimal_config();
  j["populations"][0]["price_levels"] = 1;
  CHECK(error_of(j).find("price_levels") != std::string::npos);

  j = minimal_config();
  j["populations"][0]["sellers"][0]["cost"] = 20;
  CHECK(error_of(j).find("cost") != std::string::npos);

  j = minimal_config();
  j["populations"][0]["name"] = "bad name with spaces";
  CHECK(error_of(j).find("name") != std::string::npos);
}

TEST_CASE("duplicate names and ids are rejected") {
  json j = minimal_config();
  j["populations"].push_back(j["populations"][0]);
  CHECK(error_of(j).find("duplicate") != std::string::npos);

  j = minimal_config();
  j["populations"][0]["sellers"].push_back(
      {{"id", "b0"}, {"level", 0}, {"quality", 5}});
  CHECK(error_of(j).find("duplicate") != std::string::npos);
}

TEST_CASE("an oracle-mode deep seller requires 1-level company") {
  json j = minimal_config();
  j["populations"][0]["two_level_mode"] = "oracle";
  j["populations"][0]["buyers"] = json::array({{{"id", "b0"}, {"level", 1}}});
  j["populations"][0]["sellers"] = json::array({
      {{"id", "s0"}, {"level", 2}, {"quality", 2}},
      {{"id", "s1"}, {"level", 0}, {"quality", 2}},
  });
  CHECK(!error_of(j).empty());

  // The same roster is fine once the rival is 1-level.
  j["populations"][0]["sellers"][1]["level"] = 1;
  CHECK(error_of(j).empty());

  // But 0-level buyers cannot be simulated by the deep seller.
  j["populations"][0]["buyers"][0]["level"] = 0;
  CHECK(!error_of(j).empty());

  // Two deep sellers cannot both read true states that do not exist.
  j["populations"][0]["buyers"][0]["level"] = 1;
  j["populations"][0]["sellers"][1]["level"] = 2;
  CHECK(!error_of(j).empty());
}

TEST_CASE("learned mode places no such restriction") {
  json j = minimal_config();
  j["populations"][0]["two_level_mode"] = "learned";
  j["populations"][0]["sellers"] = json::array({
      {{"id", "s0"}, {"level", 2}, {"quality", 2}},
      {{"id", "s1"}, {"level", 0}, {"quality", 2}},
  });
  CHECK(error_of(j).empty());
}

TEST_CASE("every preset parses, validates, and round-trips through JSON") {
  const std::vector<std::string> names = preset_names();
  REQUIRE(names.size() == 5);
  for (const std::string& name : names) {
    INFO(name);
    const ExperimentConfig cfg = make_preset(name);
    CHECK_NOTHROW(validate_config(cfg));
    const json out = config_to_json(cfg);
    const ExperimentConfig back = parse_config(out);
    CHECK(config_to_json(back) == out);
    CHECK(cfg.runs_per_population == 100);
    CHECK(cfg.base_seed == 1);
    for (const MarketConfig& m : cfg.populations) {
      for (const SellerSpec& s : m.sellers) CHECK(s.cost == s.true_quality);
    }
  }
  CHECK_THROWS_AS((void)make_preset("no-such-thing"), ConfigError);
}

TEST_CASE("the all-0-level series thins out high quality one step per population") {
  const ExperimentConfig cfg = make_preset("p-series-0level");
  REQUIRE(cfg.populations.size() == 8);
  const auto qualities = [&](int pi) {
    std::vector<int> q;
    for (const SellerSpec& s : cfg.populations[static_cast<size_t>(pi)].sellers)
      q.push_back(s.true_quality);
    return q;
  };
  CHECK(qualities(0) == std::vector<int>{8, 8, 8, 8, 8, 8, 8, 8});
  CHECK(qualities(1) == std::vector<int>{8, 8, 8, 8, 8, 8, 7, 8});
  CHECK(qualities(3) == std::vector<int>{8, 8, 8, 8, 5, 6, 7, 8});
  CHECK(qualities(7) == std::vector<int>{1, 2, 3, 4, 5, 6, 7, 8});
  for (const MarketConfig& m : cfg.populations) {
    CHECK(m.buyers.size() == 5);
    for (const BuyerSpec& b : m.buyers) CHECK(b.level == AgentLevel::Zero);
    for (const SellerSpec& s : m.sellers) CHECK(s.level == AgentLevel::Zero);
  }
}

TEST_CASE("the lone smart-seller series matches its published rosters") {
  const ExperimentConfig cfg = make_preset("one-1level-seller");
  REQUIRE(cfg.populations.size() == 7);
  const MarketConfig& p1 = cfg.populations[0];
  const MarketConfig& p7 = cfg.populations[6];
  std::vector<int> q1;
  std::vector<int> q7;
  for (const SellerSpec& s : p1.sellers) q1.push_back(s.true_quality);
  for (const SellerSpec& s : p7.sellers) q7.push_back(s.true_quality);
  CHECK(q1 == std::vector<int>{2, 2, 2, 2, 2, 2, 2, 2});
  CHECK(q7 == std::vector<int>{2, 3, 4, 5, 6, 7, 8, 2});
  for (const MarketConfig& m : cfg.populations) {
    CHECK(m.sellers.back().level == AgentLevel::One);
    for (size_t i = 0; i + 1 < m.sellers.size(); ++i)
      CHECK(m.sellers[i].level == AgentLevel::Zero);
  }
  CHECK(cfg.populations[0].group == "low");
  CHECK(cfg.populations[4].group == "low");
  CHECK(cfg.populations[5].group == "high");
  CHECK(cfg.populations[6].group == "high");
}

TEST_CASE("the watchful-buyers population pits equal-quality sellers") {
  const ExperimentConfig cfg = make_preset("one-1level-seller-1level-buyers");
  REQUIRE(cfg.populations.size() == 7);
  const MarketConfig& p7 = cfg.populations[6];
  for (const BuyerSpec& b : p7.buyers) CHECK(b.level == AgentLevel::One);
  CHECK(p7.sellers.front().level == AgentLevel::Zero);
  CHECK(p7.sellers.front().true_quality == 8);
  CHECK(p7.sellers.back().level == AgentLevel::One);
  CHECK(p7.sellers.back().true_quality == 8);
}

TEST_CASE("the crowding series adds 1-level sellers from the front") {
  const ExperimentConfig cfg = make_preset("many-1level-sellers");
  REQUIRE(cfg.populations.size() == 7);
  for (size_t k = 0; k < 7; ++k) {
    const MarketConfig& m = cfg.populations[k];
    REQUIRE(m.sellers.size() == 7);
    std::vector<int> q;
    for (const SellerSpec& s : m.sellers) q.push_back(s.true_quality);
    CHECK(q == std::vector<int>{2, 2, 2, 2, 2, 3, 4});
    for (size_t i = 0; i < 7; ++i) {
      const AgentLevel want = i < k ? AgentLevel::One : AgentLevel::Zero;
      CHECK(m.sellers[i].level == want);
    }
  }
}

TEST_CASE("the deep-seller population runs in oracle mode") {
  const ExperimentConfig cfg = make_preset("two-level-oracle");
  REQUIRE(cfg.populations.size() == 1);
  const MarketConfig& m = cfg.populations[0];
  CHECK(m.two_level_mode == TwoLevelMode::Oracle);
  CHECK(m.sellers.back().level == AgentLevel::Two);
  for (size_t i = 0; i + 1 < m.sellers.size(); ++i)
    CHECK(m.sellers[i].level == AgentLevel::One);
  for (const BuyerSpec& b : m.buyers) CHECK(b.level == AgentLevel::One);
  for (const SellerSpec& s : m.sellers) CHECK(s.true_quality == 2);
}

TEST_CASE("the config fingerprint tracks behavior-relevant fields only") {
  const ExperimentConfig a = make_preset("one-1level-seller");
  const std::uint64_t h = config_hash(a.populations[0], a.params);
  CHECK(h == config_hash(a.populations[0], a.params));
  CHECK(h != config_hash(a.populations[1], a.params));

  SimParams p = a.params;
  p.auctions += 500;
  p.equilibrium_min_len += 5;
  CHECK(h == config_hash(a.populations[0], p));  // reporting knobs, not behavior
  p.gamma = 0.98;
  CHECK(h != config_hash(a.populations[0], p));

  MarketConfig m = a.populations[0];
  m.sellers[0].true_quality = 7;
  CHECK(h != config_hash(m, a.params));
}
