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

#include "agora/config.hpp"

#include <cctype>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

namespace agora {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw ConfigError(path + ": " + what);
}

void expect_object(const json& j, const std::string& path) {
  if (!j.is_object()) fail(path, "expected an object");
}

// Typo protection: every object is checked against the full key list for its
// level of the schema.
void reject_unknown(const json& j, const std::string& path,
                    std::initializer_list<const char*> allowed) {
  for (const auto& item : j.items()) {
    bool ok = false;
    for (const char* k : allowed) {
      if (item.key() == k) {
        ok = true;
        break;
      }
    }
    if (!ok) fail(path + "." + item.key(), "unknown key");
  }
}

int get_int(const json& j, const char* key, int fallback, const std::string& path) {
  if (!j.contains(key)) return fallback;
  const json& v = j.at(key);
  if (!v.is_number_integer()) fail(path + "." + key, "expected an integer");
  return v.get<int>();
}

double get_num(const json& j, const char* key, double fallback, const std::string& path) {
  if (!j.contains(key)) return fallback;
  const json& v = j.at(key);
  if (!v.is_number()) fail(path + "." + key, "expected a number");
  return v.get<double>();
}

std::string get_str(const json& j, const char* key, const std::string& fallback,
                    const std::string& path) {
  if (!j.contains(key)) return fallback;
  const json& v = j.at(key);
  if (!v.is_string()) fail(path + "." + key, "expected a string");
  return v.get<std::string>();
}

std::string require_str(const json& j, const char* key, const std::string& path) {
  if (!j.contains(key)) fail(path + "." + key, "required");
  return get_str(j, key, "", path);
}

ValueParams parse_value_params(const json& j, const ValueParams& fallback,
                               const std::string& path) {
  expect_object(j, path);
  reject_unknown(j, path, {"quality_weight", "price_weight"});
  ValueParams vp = fallback;
  vp.quality_weight = get_int(j, "quality_weight", vp.quality_weight, path);
  vp.price_weight = get_int(j, "price_weight", vp.price_weight, path);
  return vp;
}

bool valid_id(const std::string& s) {
  if (s.empty() || s.size() > 64) return false;
  for (char c : s) {
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_' && c != '-')
      return false;
  }
  return true;
}

const char* noise_name(NoiseKind k) {
  return k == NoiseKind::None ? "none" : "symmetric_step";
}

const char* schedule_name(BuyerSchedule s) {
  return s == BuyerSchedule::RoundRobin ? "round_robin" : "random";
}

const char* mode_name(TwoLevelMode m) {
  return m == TwoLevelMode::Oracle ? "oracle" : "learned";
}

void append_num(std::string& out, double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  out += buf;
}

}  // namespace

ExperimentConfig parse_config(const json& j) {
  expect_object(j, "config");
  reject_unknown(j, "config", {"experiment", "populations"});

  ExperimentConfig cfg;
  if (j.contains("experiment")) {
    const json& e = j.at("experiment");
    const std::string p = "experiment";
    expect_object(e, p);
    reject_unknown(e, p,
                   {"runs_per_population", "auctions_per_run", "base_seed", "eps_start",
                    "eps_min", "alpha_start", "alpha_min", "gamma", "window", "noise",
                    "buyer_schedule", "equilibrium_min_len"});
    cfg.runs_per_population =
        get_int(e, "runs_per_population", cfg.runs_per_population, p);
    cfg.params.auctions = get_int(e, "auctions_per_run", cfg.params.auctions, p);
    if (e.contains("base_seed")) {
      const json& v = e.at("base_seed");
      if (!v.is_number_unsigned() && !v.is_number_integer())
        fail(p + ".base_seed", "expected an integer");
      cfg.base_seed = v.get<std::uint64_t>();
    }
    cfg.params.eps_start = get_num(e, "eps_start", cfg.params.eps_start, p);
    cfg.params.eps_min = get_num(e, "eps_min", cfg.params.eps_min, p);
    cfg.params.alpha_start = get_num(e, "alpha_start", cfg.params.alpha_start, p);
    cfg.params.alpha_min = get_num(e, "alpha_min", cfg.params.alpha_min, p);
    cfg.params.gamma = get_num(e, "gamma", cfg.params.gamma, p);
    cfg.params.window = get_int(e, "window", cfg.params.window, p);
    if (e.contains("noise")) {
      const json& n = e.at("noise");
      const std::string np = p + ".noise";
      expect_object(n, np);
      reject_unknown(n, np, {"kind", "step_prob"});
      const std::string kind = get_str(n, "kind", "symmetric_step", np);
      if (kind == "none") {
        cfg.params.noise.kind = NoiseKind::None;
      } else if (kind == "symmetric_step") {
        cfg.params.noise.kind = NoiseKind::SymmetricStep;
      } else {
        fail(np + ".kind", "expected \"none\" or \"symmetric_step\"");
      }
      cfg.params.noise.step_prob = get_num(n, "step_prob", cfg.params.noise.step_prob, np);
    }
    const std::string sched = get_str(e, "buyer_schedule", "round_robin", p);
    if (sched == "round_robin") {
      cfg.params.schedule = BuyerSchedule::RoundRobin;
    } else if (sched == "random") {
      cfg.params.schedule = BuyerSchedule::Random;
    } else {
      fail(p + ".buyer_schedule", "expected \"round_robin\" or \"random\"");
    }
    cfg.params.equilibrium_min_len =
        get_int(e, "equilibrium_min_len", cfg.params.equilibrium_min_len, p);
  }

  if (!j.contains("populations")) fail("populations", "required");
  const json& pops = j.at("populations");
  if (!pops.is_array()) fail("populations", "expected an array");

  for (size_t pi = 0; pi < pops.size(); ++pi) {
    const json& pj = pops[pi];
    const std::string pp = "populations[" + std::to_string(pi) + "]";
    expect_object(pj, pp);
    reject_unknown(pj, pp,
                   {"name", "group", "price_levels", "value", "two_level_mode", "buyers",
                    "sellers"});
    MarketConfig m;
    m.name = require_str(pj, "name", pp);
    m.group = get_str(pj, "group", "", pp);
    m.price_levels = get_int(pj, "price_levels", m.price_levels, pp);
    if (pj.contains("value"))
      m.value_params = parse_value_params(pj.at("value"), m.value_params, pp + ".value");
    const std::string mode = get_str(pj, "two_level_mode", "oracle", pp);
    if (mode == "oracle") {
      m.two_level_mode = TwoLevelMode::Oracle;
    } else if (mode == "learned") {
      m.two_level_mode = TwoLevelMode::Learned;
    } else {
      fail(pp + ".two_level_mode", "expected \"oracle\" or \"learned\"");
    }

    if (!pj.contains("buyers")) fail(pp + ".buyers", "required");
    const json& buyers = pj.at("buyers");
    if (!buyers.is_array()) fail(pp + ".buyers", "expected an array");
    for (size_t bi = 0; bi < buyers.size(); ++bi) {
      const json& bj = buyers[bi];
      const std::string bp = pp + ".buyers[" + std::to_string(bi) + "]";
      expect_object(bj, bp);
      reject_unknown(bj, bp, {"id", "level", "value"});
      BuyerSpec b;
      b.id = require_str(bj, "id", bp);
      const int lvl = get_int(bj, "level", 0, bp);
      if (lvl != 0 && lvl != 1) fail(bp + ".level", "buyer level must be 0 or 1");
      b.level = static_cast<AgentLevel>(lvl);
      b.value_params = m.value_params;
      if (bj.contains("value"))
        b.value_params = parse_value_params(bj.at("value"), m.value_params, bp + ".value");
      m.buyers.push_back(std::move(b));
    }

    if (!pj.contains("sellers")) fail(pp + ".sellers", "required");
    const json& sellers = pj.at("sellers");
    if (!sellers.is_array()) fail(pp + ".sellers", "expected an array");
    for (size_t si = 0; si < sellers.size(); ++si) {
      const json& sj = sellers[si];
      const std::string sp = pp + ".sellers[" + std::to_string(si) + "]";
      expect_object(sj, sp);
      reject_unknown(sj, sp, {"id", "level", "quality", "cost"});
      SellerSpec s;
      s.id = require_str(sj, "id", sp);
      const int lvl = get_int(sj, "level", 0, sp);
      if (lvl < 0 || lvl > 2) fail(sp + ".level", "seller level must be 0, 1 or 2");
      s.level = static_cast<AgentLevel>(lvl);
      if (!sj.contains("quality")) fail(sp + ".quality", "required");
      s.true_quality = get_int(sj, "quality", 0, sp);
      s.cost = get_int(sj, "cost", s.true_quality, sp);  // cost defaults to quality
      m.sellers.push_back(std::move(s));
    }

    cfg.populations.push_back(std::move(m));
  }

  validate_config(cfg);
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw ConfigError("config is not valid JSON: " + std::string(e.what()));
  }
  return parse_config(j);
}

void validate_config(const ExperimentConfig& cfg) {
  const SimParams& p = cfg.params;
  if (cfg.runs_per_population < 1 || cfg.runs_per_population > 100000)
    fail("experiment.runs_per_population", "must be in [1, 100000]");
  if (p.auctions < 0 || p.auctions > 10000000)
    fail("experiment.auctions_per_run", "must be in [0, 10000000]");
  if (p.eps_start < 0.0 || p.eps_start > 1.0)
    fail("experiment.eps_start", "must be in [0, 1]");
  if (p.eps_min < 0.0 || p.eps_min > p.eps_start)
    fail("experiment.eps_min", "must be in [0, eps_start]");
  if (p.alpha_start < 0.0 || p.alpha_start > 1.0)
    fail("experiment.alpha_start", "must be in [0, 1]");
  if (p.alpha_min < 0.0 || p.alpha_min > p.alpha_start)
    fail("experiment.alpha_min", "must be in [0, alpha_start]");
  if (!(p.gamma > 0.0) || p.gamma > 1.0) fail("experiment.gamma", "must be in (0, 1]");
  if (p.window < 1 || p.window > 64) fail("experiment.window", "must be in [1, 64]");
  if (p.noise.step_prob < 0.0 || p.noise.step_prob > 1.0)
    fail("experiment.noise.step_prob", "must be in [0, 1]");
  if (p.equilibrium_min_len < 1)
    fail("experiment.equilibrium_min_len", "must be at least 1");

  if (cfg.populations.empty()) fail("populations", "at least one population required");
  std::set<std::string> names;
  for (size_t pi = 0; pi < cfg.populations.size(); ++pi) {
    const MarketConfig& m = cfg.populations[pi];
    const std::string pp = "populations[" + std::to_string(pi) + "]";
    if (!valid_id(m.name))
      fail(pp + ".name", "must match [A-Za-z0-9_-]{1,64} (used in file names)");
    if (!names.insert(m.name).second) fail(pp + ".name", "duplicate population name");
    if (m.price_levels < 2 || m.price_levels > 64)
      fail(pp + ".price_levels", "must be in [2, 64]");
    const auto check_weights = [&](const ValueParams& vp, const std::string& vpath) {
      if (vp.quality_weight < 0 || vp.quality_weight > 1000)
        fail(vpath + ".quality_weight", "must be in [0, 1000]");
      if (vp.price_weight > 0 || vp.price_weight < -1000)
        fail(vpath + ".price_weight", "must be in [-1000, 0]");
    };
    check_weights(m.value_params, pp + ".value");

    if (m.buyers.empty() || m.buyers.size() > 256)
      fail(pp + ".buyers", "need between 1 and 256 buyers");
    if (m.sellers.empty() || m.sellers.size() > 16)
      fail(pp + ".sellers", "need between 1 and 16 sellers");

    std::set<std::string> ids;
    for (size_t bi = 0; bi < m.buyers.size(); ++bi) {
      const BuyerSpec& b = m.buyers[bi];
      const std::string bp = pp + ".buyers[" + std::to_string(bi) + "]";
      if (!valid_id(b.id)) fail(bp + ".id", "must match [A-Za-z0-9_-]{1,64}");
      if (!ids.insert(b.id).second) fail(bp + ".id", "duplicate agent id");
      check_weights(b.value_params, bp + ".value");
    }
    bool has_two_level = false;
    for (size_t si = 0; si < m.sellers.size(); ++si) {
      const SellerSpec& s = m.sellers[si];
      const std::string sp = pp + ".sellers[" + std::to_string(si) + "]";
      if (!valid_id(s.id)) fail(sp + ".id", "must match [A-Za-z0-9_-]{1,64}");
      if (!ids.insert(s.id).second) fail(sp + ".id", "duplicate agent id");
      if (s.true_quality < 0 || s.true_quality >= m.price_levels)
        fail(sp + ".quality", "must be in [0, price_levels)");
      if (s.cost < 0 || s.cost >= m.price_levels)
        fail(sp + ".cost", "must be in [0, price_levels)");
      if (s.level == AgentLevel::Two) has_two_level = true;
    }

    // Oracle mode reads the true states of everyone else, so everyone else
    // has to actually hold 1-level state.
    if (has_two_level && m.two_level_mode == TwoLevelMode::Oracle) {
      for (size_t si = 0; si < m.sellers.size(); ++si) {
        const SellerSpec& s = m.sellers[si];
        if (s.level == AgentLevel::Two) continue;
        if (s.level != AgentLevel::One)
          fail(pp + ".sellers[" + std::to_string(si) + "].level",
               "oracle mode needs every rival of a 2-level seller to be 1-level");
      }
      int n2 = 0;
      for (const SellerSpec& s : m.sellers)
        if (s.level == AgentLevel::Two) ++n2;
      if (n2 > 1)
        fail(pp + ".sellers", "oracle mode allows at most one 2-level seller");
      for (size_t bi = 0; bi < m.buyers.size(); ++bi) {
        if (m.buyers[bi].level != AgentLevel::One)
          fail(pp + ".buyers[" + std::to_string(bi) + "].level",
               "oracle mode needs 1-level buyers");
      }
    }
  }
}

nlohmann::json config_to_json(const ExperimentConfig& cfg) {
  json e;
  e["runs_per_population"] = cfg.runs_per_population;
  e["auctions_per_run"] = cfg.params.auctions;
  e["base_seed"] = cfg.base_seed;
  e["eps_start"] = cfg.params.eps_start;
  e["eps_min"] = cfg.params.eps_min;
  e["alpha_start"] = cfg.params.alpha_start;
  e["alpha_min"] = cfg.params.alpha_min;
  e["gamma"] = cfg.params.gamma;
  e["window"] = cfg.params.window;
  e["noise"] = {{"kind", noise_name(cfg.params.noise.kind)},
                {"step_prob", cfg.params.noise.step_prob}};
  e["buyer_schedule"] = schedule_name(cfg.params.schedule);
  e["equilibrium_min_len"] = cfg.params.equilibrium_min_len;

  json pops = json::array();
  for (const MarketConfig& m : cfg.populations) {
    json pj;
    pj["name"] = m.name;
    if (!m.group.empty()) pj["group"] = m.group;
    pj["price_levels"] = m.price_levels;
    pj["value"] = {{"quality_weight", m.value_params.quality_weight},
                   {"price_weight", m.value_params.price_weight}};
    pj["two_level_mode"] = mode_name(m.two_level_mode);
    json buyers = json::array();
    for (const BuyerSpec& b : m.buyers) {
      json bj;
      bj["id"] = b.id;
      bj["level"] = static_cast<int>(b.level);
      bj["value"] = {{"quality_weight", b.value_params.quality_weight},
                     {"price_weight", b.value_params.price_weight}};
      buyers.push_back(std::move(bj));
    }
    pj["buyers"] = std::move(buyers);
    json sellers = json::array();
    for (const SellerSpec& s : m.sellers) {
      json sj;
      sj["id"] = s.id;
      sj["level"] = static_cast<int>(s.level);
      sj["quality"] = s.true_quality;
      sj["cost"] = s.cost;
      sellers.push_back(std::move(sj));
    }
    pj["sellers"] = std::move(sellers);
    pops.push_back(std::move(pj));
  }

  json j;
  j["experiment"] = std::move(e);
  j["populations"] = std::move(pops);
  return j;
}

std::uint64_t config_hash(const MarketConfig& m, const SimParams& p) {
  // Canonical description of everything that shapes agent behavior. The
  // auction count and the metrics window are deliberately left out; they do
  // not change what any agent does at a given step.
  std::string s = "agora-v1|";
  s += m.name;
  s += '|';
  s += std::to_string(m.price_levels);
  s += '|';
  s += std::to_string(m.value_params.quality_weight);
  s += ',';
  s += std::to_string(m.value_params.price_weight);
  s += '|';
  s += mode_name(m.two_level_mode);
  s += '|';
  append_num(s, p.eps_start);
  s += ',';
  append_num(s, p.eps_min);
  s += ',';
  append_num(s, p.alpha_start);
  s += ',';
  append_num(s, p.alpha_min);
  s += ',';
  append_num(s, p.gamma);
  s += '|';
  s += std::to_string(p.window);
  s += '|';
  s += noise_name(p.noise.kind);
  s += ',';
  append_num(s, p.noise.step_prob);
  s += '|';
  s += schedule_name(p.schedule);
  s += "|B:";
  for (const BuyerSpec& b : m.buyers) {
    s += b.id;
    s += ':';
    s += std::to_string(static_cast<int>(b.level));
    s += ':';
    s += std::to_string(b.value_params.quality_weight);
    s += ':';
    s += std::to_string(b.value_params.price_weight);
    s += ';';
  }
  s += "|S:";
  for (const SellerSpec& sp : m.sellers) {
    s += sp.id;
    s += ':';
    s += std::to_string(static_cast<int>(sp.level));
    s += ':';
    s += std::to_string(sp.cost);
    s += ':';
    s += std::to_string(sp.true_quality);
    s += ';';
  }

  std::uint64_t h = 1469598103934665603ULL;  // FNV-1a 64
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

// --- presets -----------------------------------------------------------------

namespace {

std::vector<BuyerSpec> buyer_roster(int n, AgentLevel level) {
  std::vector<BuyerSpec> out;
  for (int i = 1; i <= n; ++i) {
    BuyerSpec b;
    b.id = "b" + std::to_string(i);
    b.level = level;
    out.push_back(std::move(b));
  }
  return out;
}

SellerSpec seller(int index, AgentLevel level, Quality quality) {
  SellerSpec s;
  s.id = "s" + std::to_string(index);
  s.level = level;
  s.true_quality = quality;
  s.cost = quality;  // production cost equals quality throughout the presets
  return s;
}

ExperimentConfig base_experiment() {
  ExperimentConfig cfg;
  cfg.runs_per_population = 100;
  cfg.base_seed = 1;
  return cfg;
}

// Eight 0-level sellers starting all at quality 8; each next population turns
// one more of them down, until the roster reads 1..8. Shows how price settles
// when goods stop being interchangeable.
ExperimentConfig preset_p_series() {
  ExperimentConfig cfg = base_experiment();
  for (int k = 1; k <= 8; ++k) {
    MarketConfig m;
    m.name = "p" + std::to_string(k);
    m.buyers = buyer_roster(5, AgentLevel::Zero);
    for (int i = 1; i <= 8; ++i) {
      const Quality q = (i >= 9 - k && i <= 7) ? i : 8;
      m.sellers.push_back(seller(i, AgentLevel::Zero, q));
    }
    cfg.populations.push_back(std::move(m));
  }
  return cfg;
}

// One 1-level seller (always last, quality 2) among 0-level sellers. Quality
// spread grows across populations; groups mark where the cheapest good still
// has a profitable neighbor price.
ExperimentConfig preset_one_1level_seller() {
  ExperimentConfig cfg = base_experiment();
  for (int k = 1; k <= 7; ++k) {
    MarketConfig m;
    m.name = "p" + std::to_string(k);
    m.group = k <= 5 ? "low" : "high";
    m.buyers = buyer_roster(5, AgentLevel::Zero);
    for (int i = 1; i <= 7; ++i) {
      const Quality q = (i >= 2 && i <= k) ? i + 1 : 2;
      m.sellers.push_back(seller(i, AgentLevel::Zero, q));
    }
    m.sellers.push_back(seller(8, AgentLevel::One, 2));
    cfg.populations.push_back(std::move(m));
  }
  return cfg;
}

// Same ladder, but the buyers are 1-level too and the modeling seller offers
// the top quality. Pits a 1-level seller against an equal-quality 0-level
// seller (s1) under buyers who track quality themselves.
ExperimentConfig preset_one_1level_seller_1level_buyers() {
  ExperimentConfig cfg = base_experiment();
  for (int k = 1; k <= 7; ++k) {
    MarketConfig m;
    m.name = "p" + std::to_string(k);
    m.buyers = buyer_roster(5, AgentLevel::One);
    m.sellers.push_back(seller(1, AgentLevel::Zero, 8));
    for (int i = 2; i <= 7; ++i) {
      const Quality q = (i <= k) ? i : 8;
      m.sellers.push_back(seller(i, AgentLevel::Zero, q));
    }
    m.sellers.push_back(seller(8, AgentLevel::One, 8));
    cfg.populations.push_back(std::move(m));
  }
  return cfg;
}

// Seven sellers with qualities {2,2,2,2,2,3,4}; populations differ only in
// how many of them (from the front) have switched to 1-level modeling.
ExperimentConfig preset_many_1level_sellers() {
  ExperimentConfig cfg = base_experiment();
  const Quality qualities[7] = {2, 2, 2, 2, 2, 3, 4};
  for (int k = 0; k <= 6; ++k) {
    MarketConfig m;
    m.name = "n1l" + std::to_string(k);
    m.buyers = buyer_roster(5, AgentLevel::Zero);
    for (int i = 1; i <= 7; ++i) {
      const AgentLevel lvl = i <= k ? AgentLevel::One : AgentLevel::Zero;
      m.sellers.push_back(seller(i, lvl, qualities[i - 1]));
    }
    cfg.populations.push_back(std::move(m));
  }
  return cfg;
}

// One oracle-mode 2-level seller against seven 1-level rivals of the same
// quality, with 1-level buyers.
ExperimentConfig preset_two_level_oracle() {
  ExperimentConfig cfg = base_experiment();
  MarketConfig m;
  m.name = "oracle2";
  m.two_level_mode = TwoLevelMode::Oracle;
  m.buyers = buyer_roster(5, AgentLevel::One);
  for (int i = 1; i <= 7; ++i) m.sellers.push_back(seller(i, AgentLevel::One, 2));
  m.sellers.push_back(seller(8, AgentLevel::Two, 2));
  cfg.populations.push_back(std::move(m));
  return cfg;
}

}  // namespace

std::vector<std::string> preset_names() {
  return {"p-series-0level", "one-1level-seller", "one-1level-seller-1level-buyers",
          "many-1level-sellers", "two-level-oracle"};
}

ExperimentConfig make_preset(const std::string& name) {
  ExperimentConfig cfg;
  if (name == "p-series-0level") {
    cfg = preset_p_series();
  } else if (name == "one-1level-seller") {
    cfg = preset_one_1level_seller();
  } else if (name == "one-1level-seller-1level-buyers") {
    cfg = preset_one_1level_seller_1level_buyers();
  } else if (name == "many-1level-sellers") {
    cfg = preset_many_1level_sellers();
  } else if (name == "two-level-oracle") {
    cfg = preset_two_level_oracle();
  } else {
    throw ConfigError("unknown preset: " + name);
  }
  validate_config(cfg);
  return cfg;
}

}  // namespace agora
