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

#include "agora/io.hpp"

#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace agora {

using nlohmann::json;

namespace {

[[noreturn]] void io_fail(const std::filesystem::path& path, const std::string& what) {
  throw std::runtime_error(path.string() + ": " + what);
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

int parse_int(const std::string& s, const std::filesystem::path& path, int line_no) {
  try {
    size_t used = 0;
    const int v = std::stoi(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    io_fail(path, "line " + std::to_string(line_no) + ": expected an integer, got \"" + s + "\"");
  }
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) io_fail(path, "cannot open for writing");
  return out;
}

json schedule_json(const AnnealSchedule& s) {
  return {{"current", s.current}, {"floor", s.floor}, {"gamma", s.gamma}};
}

json density_json(const EmpiricalDensity& d) {
  json w = json::array();
  for (int x : d.window()) w.push_back(x);
  return w;
}

json densities_json(const std::vector<EmpiricalDensity>& ds) {
  json out = json::array();
  for (const EmpiricalDensity& d : ds) out.push_back(density_json(d));
  return out;
}

json table_json(const RewardTable& t) {
  json out = json::array();
  for (int a = 0; a < t.actions(); ++a) out.push_back(t.at(a));
  return out;
}

json seller1_json(const Seller1State& s) {
  json j;
  j["cost"] = s.cost;
  j["explore"] = schedule_json(s.explore);
  j["accepted_price_by_buyer"] = densities_json(s.accepted_price);
  j["rival_bids_by_seller"] = densities_json(s.rival_bids);
  return j;
}

json buyer1_json(const Buyer1State& b) {
  json j;
  j["explore"] = schedule_json(b.explore);
  j["value"] = {{"quality_weight", b.value_params.quality_weight},
                {"price_weight", b.value_params.price_weight}};
  j["seller_quality"] = densities_json(b.seller_quality);
  return j;
}

}  // namespace

std::string transcript_filename(const std::string& population, int run) {
  return population + "_run" + std::to_string(run) + ".csv";
}

void write_transcript(std::ostream& out, const RunTranscript& t,
                      const MarketConfig& market) {
  char hash_buf[20];
  std::snprintf(hash_buf, sizeof(hash_buf), "%016" PRIx64, t.config_hash);
  out << "# agora-transcript v1\n";
  out << "# population=" << market.name << "\n";
  out << "# config_hash=" << hash_buf << "\n";
  out << "# seed=" << t.seed << "\n";
  out << "# auctions=" << t.records.size() << "\n";
  out << "# buyers=";
  for (size_t i = 0; i < market.buyers.size(); ++i)
    out << (i ? "," : "") << market.buyers[i].id;
  out << "\n# sellers=";
  for (size_t i = 0; i < market.sellers.size(); ++i)
    out << (i ? "," : "") << market.sellers[i].id;
  out << "\n";
  out << "index,buyer,winner,price,perceived_quality";
  for (const SellerSpec& s : market.sellers) out << ",bid:" << s.id;
  out << "\n";
  for (const AuctionRecord& r : t.records) {
    out << r.index << ',' << market.buyers[static_cast<size_t>(r.buyer)].id << ','
        << market.sellers[static_cast<size_t>(r.winner)].id << ',' << r.price_paid << ','
        << r.perceived_quality;
    for (Price b : r.bids) out << ',' << b;
    out << "\n";
  }
}

void write_transcript_file(const std::filesystem::path& path, const RunTranscript& t,
                           const MarketConfig& market) {
  std::ofstream out = open_out(path);
  write_transcript(out, t, market);
  if (!out) io_fail(path, "write failed");
}

LoadedTranscript read_transcript_file(const std::filesystem::path& path,
                                      const ExperimentConfig& cfg) {
  std::ifstream in(path);
  if (!in) io_fail(path, "cannot open");

  std::string population;
  std::uint64_t hash = 0;
  std::uint64_t seed = 0;
  bool have_hash = false;
  std::string line;
  int line_no = 0;

  // Comment header first.
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    if (line[0] != '#') break;
    const size_t eq = line.find('=');
    if (eq == std::string::npos) continue;
    std::string key = line.substr(2, eq - 2);
    std::string val = line.substr(eq + 1);
    if (key == "population") {
      population = val;
    } else if (key == "config_hash") {
      hash = std::strtoull(val.c_str(), nullptr, 16);
      have_hash = true;
    } else if (key == "seed") {
      seed = std::strtoull(val.c_str(), nullptr, 10);
    }
  }
  if (population.empty() || !have_hash) io_fail(path, "missing transcript header");

  LoadedTranscript out;
  for (size_t i = 0; i < cfg.populations.size(); ++i) {
    if (cfg.populations[i].name == population) {
      out.population_index = static_cast<int>(i);
      break;
    }
  }
  if (out.population_index < 0)
    io_fail(path, "population \"" + population + "\" not present in the config");
  const MarketConfig& market = cfg.populations[static_cast<size_t>(out.population_index)];
  if (config_hash(market, cfg.params) != hash)
    io_fail(path, "config fingerprint mismatch; transcript was made with different settings");

  out.transcript.config_hash = hash;
  out.transcript.seed = seed;

  // `line` currently holds the column header row; sanity-check the width.
  const size_t n_sellers = market.sellers.size();
  const size_t expect_cols = 5 + n_sellers;
  if (split(line, ',').size() != expect_cols) io_fail(path, "unexpected column count");

  const auto buyer_index = [&](const std::string& id) {
    for (size_t i = 0; i < market.buyers.size(); ++i)
      if (market.buyers[i].id == id) return static_cast<int>(i);
    io_fail(path, "unknown buyer id \"" + id + "\"");
  };
  const auto seller_index = [&](const std::string& id) {
    for (size_t i = 0; i < market.sellers.size(); ++i)
      if (market.sellers[i].id == id) return static_cast<int>(i);
    io_fail(path, "unknown seller id \"" + id + "\"");
  };

  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const std::vector<std::string> cols = split(line, ',');
    if (cols.size() != expect_cols)
      io_fail(path, "line " + std::to_string(line_no) + ": unexpected column count");
    AuctionRecord r;
    r.index = parse_int(cols[0], path, line_no);
    r.buyer = buyer_index(cols[1]);
    r.winner = seller_index(cols[2]);
    r.price_paid = parse_int(cols[3], path, line_no);
    r.perceived_quality = parse_int(cols[4], path, line_no);
    if (r.price_paid < 0 || r.price_paid >= market.price_levels)
      io_fail(path, "line " + std::to_string(line_no) + ": price out of range");
    r.bids.resize(n_sellers);
    for (size_t s = 0; s < n_sellers; ++s)
      r.bids[s] = parse_int(cols[5 + s], path, line_no);
    if (r.bids[static_cast<size_t>(r.winner)] != r.price_paid)
      io_fail(path, "line " + std::to_string(line_no) + ": price does not match winner bid");
    // Derived fields are functions of the config.
    const SellerSpec& w = market.sellers[static_cast<size_t>(r.winner)];
    r.true_quality = w.true_quality;
    r.winner_profit = profit(r.price_paid, w.cost, true);
    r.buyer_value = value(market.buyers[static_cast<size_t>(r.buyer)].value_params,
                          r.price_paid, r.perceived_quality);
    out.transcript.records.push_back(std::move(r));
  }
  return out;
}

void write_states_file(const std::filesystem::path& path, const Simulation& sim) {
  json j;
  j["format"] = "agora-states v1";
  j["population"] = sim.market().name;
  j["seed"] = sim.seed();
  j["auctions_run"] = sim.auctions_run();

  json buyers = json::array();
  for (int i = 0; i < sim.buyer_count(); ++i) {
    const BuyerAgent& a = sim.buyer(i);
    json bj;
    bj["id"] = a.spec.id;
    bj["level"] = static_cast<int>(a.spec.level);
    if (const auto* b0 = std::get_if<Buyer0State>(&a.state)) {
      bj["explore"] = schedule_json(b0->explore);
      bj["learn_rate"] = schedule_json(b0->learn_rate);
      bj["value_by_price"] = table_json(b0->value_by_price);
    } else {
      bj.update(buyer1_json(std::get<Buyer1State>(a.state)));
    }
    buyers.push_back(std::move(bj));
  }
  j["buyers"] = std::move(buyers);

  json sellers = json::array();
  for (int i = 0; i < sim.seller_count(); ++i) {
    const SellerAgent& a = sim.seller(i);
    json sj;
    sj["id"] = a.spec.id;
    sj["level"] = static_cast<int>(a.spec.level);
    sj["cost"] = a.spec.cost;
    sj["quality"] = a.spec.true_quality;
    if (const auto* s0 = std::get_if<Seller0State>(&a.state)) {
      sj["explore"] = schedule_json(s0->explore);
      sj["learn_rate"] = schedule_json(s0->learn_rate);
      sj["profit_by_price"] = table_json(s0->profit_by_price);
    } else if (const auto* s1 = std::get_if<Seller1State>(&a.state)) {
      sj.update(seller1_json(*s1));
    } else {
      const auto& s2 = std::get<Seller2State>(a.state);
      sj["mode"] = s2.mode == TwoLevelMode::Oracle ? "oracle" : "learned";
      sj["explore"] = schedule_json(s2.explore);
      if (s2.mode == TwoLevelMode::Learned) {
        json rm = json::array();
        for (const Seller1State& r : s2.rival_models) rm.push_back(seller1_json(r));
        sj["rival_models"] = std::move(rm);
        sj["buyer_model"] = buyer1_json(s2.buyer_model);
      }
    }
    sellers.push_back(std::move(sj));
  }
  j["sellers"] = std::move(sellers);

  std::ofstream out = open_out(path);
  out << j.dump(2) << "\n";
  if (!out) io_fail(path, "write failed");
}

std::vector<std::filesystem::path> emit_outputs(const AggregateReport& report,
                                                const ExperimentConfig& cfg,
                                                const std::filesystem::path& out_dir) {
  std::filesystem::create_directories(out_dir);
  std::vector<std::filesystem::path> written;

  // Population-level table.
  {
    const std::filesystem::path p = out_dir / "summary.csv";
    std::ofstream out = open_out(p);
    out << "population,group,runs,auctions,mean_price,mean_price_se,volatility,"
           "volatility_se,modal_price,modal_mass,modal_mass_se,episode_count,"
           "episode_count_se,episode_coverage,episode_coverage_se\n";
    for (const PopulationAggregate& pa : report.populations) {
      out << pa.name << ',' << pa.group << ',' << pa.runs << ',' << pa.auctions << ','
          << fmt(pa.mean_price.mean) << ',' << fmt(pa.mean_price.se) << ','
          << fmt(pa.volatility.mean) << ',' << fmt(pa.volatility.se) << ','
          << pa.modal_price << ',' << fmt(pa.modal_mass.mean) << ','
          << fmt(pa.modal_mass.se) << ',' << fmt(pa.episode_count.mean) << ','
          << fmt(pa.episode_count.se) << ',' << fmt(pa.episode_coverage.mean) << ','
          << fmt(pa.episode_coverage.se) << "\n";
    }
    written.push_back(p);
  }

  // Per-agent table. Seller-only and buyer-only columns stay empty for the
  // other role.
  {
    const std::filesystem::path p = out_dir / "agents.csv";
    std::ofstream out = open_out(p);
    out << "population,agent,role,level,quality,cost,win_rate,win_rate_se,profit,"
           "profit_se,value,value_se\n";
    for (size_t pi = 0; pi < report.populations.size(); ++pi) {
      const PopulationAggregate& pa = report.populations[pi];
      const MarketConfig& market = cfg.populations[pi];
      for (size_t s = 0; s < market.sellers.size(); ++s) {
        const SellerSpec& spec = market.sellers[s];
        out << pa.name << ',' << spec.id << ",seller," << static_cast<int>(spec.level)
            << ',' << spec.true_quality << ',' << spec.cost << ','
            << fmt(pa.seller_win_rate[s].mean) << ',' << fmt(pa.seller_win_rate[s].se)
            << ',' << fmt(pa.seller_profit[s].mean) << ',' << fmt(pa.seller_profit[s].se)
            << ",,\n";
      }
      for (size_t b = 0; b < market.buyers.size(); ++b) {
        const BuyerSpec& spec = market.buyers[b];
        out << pa.name << ',' << spec.id << ",buyer," << static_cast<int>(spec.level)
            << ",,,,,,," << fmt(pa.buyer_value[b].mean) << ','
            << fmt(pa.buyer_value[b].se) << "\n";
      }
    }
    written.push_back(p);
  }

  // Transacted-price distribution, skipping prices that never cleared.
  {
    const std::filesystem::path p = out_dir / "distribution.csv";
    std::ofstream out = open_out(p);
    out << "population,price,mass\n";
    for (const PopulationAggregate& pa : report.populations) {
      for (size_t price = 0; price < pa.distribution_mean.size(); ++price) {
        if (pa.distribution_mean[price] > 0.0)
          out << pa.name << ',' << price << ',' << fmt(pa.distribution_mean[price])
              << "\n";
      }
    }
    written.push_back(p);
  }

  // Everything again, self-describing.
  {
    const std::filesystem::path p = out_dir / "report.json";
    json j;
    j["format"] = "agora-report v1";
    j["runs_per_population"] = cfg.runs_per_population;
    j["auctions_per_run"] = cfg.params.auctions;
    j["base_seed"] = cfg.base_seed;
    json pops = json::array();
    const auto agg = [](const Aggregate& a) {
      return json{{"mean", a.mean}, {"se", a.se}};
    };
    for (size_t pi = 0; pi < report.populations.size(); ++pi) {
      const PopulationAggregate& pa = report.populations[pi];
      const MarketConfig& market = cfg.populations[pi];
      json pj;
      pj["name"] = pa.name;
      if (!pa.group.empty()) pj["group"] = pa.group;
      pj["runs"] = pa.runs;
      pj["auctions"] = pa.auctions;
      pj["mean_price"] = agg(pa.mean_price);
      pj["volatility"] = agg(pa.volatility);
      pj["modal_price"] = pa.modal_price;
      pj["modal_mass"] = agg(pa.modal_mass);
      pj["episode_count"] = agg(pa.episode_count);
      pj["episode_coverage"] = agg(pa.episode_coverage);
      json dist = json::array();
      for (size_t price = 0; price < pa.distribution_mean.size(); ++price) {
        if (pa.distribution_mean[price] > 0.0)
          dist.push_back({{"price", price}, {"mass", pa.distribution_mean[price]}});
      }
      pj["distribution"] = std::move(dist);
      json sellers = json::array();
      for (size_t s = 0; s < market.sellers.size(); ++s) {
        sellers.push_back({{"id", market.sellers[s].id},
                           {"level", static_cast<int>(market.sellers[s].level)},
                           {"quality", market.sellers[s].true_quality},
                           {"cost", market.sellers[s].cost},
                           {"win_rate", agg(pa.seller_win_rate[s])},
                           {"profit", agg(pa.seller_profit[s])}});
      }
      pj["sellers"] = std::move(sellers);
      json buyers = json::array();
      for (size_t b = 0; b < market.buyers.size(); ++b) {
        buyers.push_back({{"id", market.buyers[b].id},
                          {"level", static_cast<int>(market.buyers[b].level)},
                          {"value", agg(pa.buyer_value[b])}});
      }
      pj["buyers"] = std::move(buyers);
      pops.push_back(std::move(pj));
    }
    j["populations"] = std::move(pops);
    std::ofstream out = open_out(p);
    out << j.dump(2) << "\n";
    written.push_back(p);
  }

  return written;
}

}  // namespace agora
