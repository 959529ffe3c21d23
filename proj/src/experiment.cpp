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

#include "agora/experiment.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "agora/io.hpp"
#include "agora/rng.hpp"

namespace agora {

namespace {

bool same_double(double a, double b) {
  if (std::isnan(a) && std::isnan(b)) return true;
  return a == b;
}

bool same_aggregate(const Aggregate& a, const Aggregate& b) {
  return same_double(a.mean, b.mean) && same_double(a.se, b.se);
}

}  // namespace

Aggregate aggregate_of(std::span<const double> values) {
  Aggregate a;
  const size_t n = values.size();
  if (n == 0) {
    a.mean = std::numeric_limits<double>::quiet_NaN();
    return a;
  }
  double sum = 0.0;
  for (double v : values) sum += v;
  a.mean = sum / static_cast<double>(n);
  if (n > 1) {
    double ss = 0.0;
    for (double v : values) ss += (v - a.mean) * (v - a.mean);
    a.se = std::sqrt(ss / static_cast<double>(n - 1) / static_cast<double>(n));
  }
  return a;
}

PopulationAggregate aggregate_population(const MarketConfig& market, int auctions,
                                         std::span<const MetricsReport> runs) {
  PopulationAggregate pa;
  pa.name = market.name;
  pa.group = market.group;
  pa.runs = static_cast<int>(runs.size());
  pa.auctions = auctions;

  const size_t n = runs.size();
  std::vector<double> tmp(n);
  const auto collect = [&](auto&& get) {
    for (size_t i = 0; i < n; ++i) tmp[static_cast<size_t>(i)] = get(runs[i]);
    return aggregate_of(tmp);
  };

  pa.mean_price = collect([](const MetricsReport& m) { return m.mean_price; });
  pa.volatility = collect([](const MetricsReport& m) { return m.volatility; });

  pa.distribution_mean.assign(static_cast<size_t>(market.price_levels), 0.0);
  if (n > 0) {
    for (const MetricsReport& m : runs) {
      for (size_t p = 0; p < pa.distribution_mean.size(); ++p)
        pa.distribution_mean[p] += m.distribution.mass[p];
    }
    for (double& v : pa.distribution_mean) v /= static_cast<double>(n);
  }
  double best_mass = 0.0;
  pa.modal_price = -1;
  for (size_t p = 0; p < pa.distribution_mean.size(); ++p) {
    if (pa.distribution_mean[p] > best_mass) {
      best_mass = pa.distribution_mean[p];
      pa.modal_price = static_cast<int>(p);
    }
  }
  if (pa.modal_price >= 0) {
    pa.modal_mass = collect([&](const MetricsReport& m) {
      return m.distribution.mass[static_cast<size_t>(pa.modal_price)];
    });
  } else {
    pa.modal_mass.mean = std::numeric_limits<double>::quiet_NaN();
  }

  pa.episode_count = collect([](const MetricsReport& m) {
    return static_cast<double>(m.equilibrium_episodes.size());
  });
  pa.episode_coverage = collect([](const MetricsReport& m) {
    if (m.auctions == 0) return std::numeric_limits<double>::quiet_NaN();
    long long covered = 0;
    for (const Episode& e : m.equilibrium_episodes) covered += e.length;
    return static_cast<double>(covered) / static_cast<double>(m.auctions);
  });

  for (size_t s = 0; s < market.sellers.size(); ++s) {
    pa.seller_win_rate.push_back(
        collect([&](const MetricsReport& m) { return m.sellers[s].win_rate; }));
    pa.seller_profit.push_back(collect(
        [&](const MetricsReport& m) { return static_cast<double>(m.sellers[s].total_profit); }));
  }
  for (size_t b = 0; b < market.buyers.size(); ++b) {
    pa.buyer_value.push_back(collect(
        [&](const MetricsReport& m) { return static_cast<double>(m.buyers[b].total_value); }));
  }
  return pa;
}

bool aggregate_equal(const AggregateReport& a, const AggregateReport& b) {
  if (a.populations.size() != b.populations.size()) return false;
  for (size_t i = 0; i < a.populations.size(); ++i) {
    const PopulationAggregate& x = a.populations[i];
    const PopulationAggregate& y = b.populations[i];
    if (x.name != y.name || x.group != y.group || x.runs != y.runs ||
        x.auctions != y.auctions || x.modal_price != y.modal_price)
      return false;
    if (!same_aggregate(x.mean_price, y.mean_price) ||
        !same_aggregate(x.volatility, y.volatility) ||
        !same_aggregate(x.modal_mass, y.modal_mass) ||
        !same_aggregate(x.episode_count, y.episode_count) ||
        !same_aggregate(x.episode_coverage, y.episode_coverage))
      return false;
    if (x.distribution_mean != y.distribution_mean) return false;
    if (x.seller_win_rate.size() != y.seller_win_rate.size() ||
        x.buyer_value.size() != y.buyer_value.size())
      return false;
    for (size_t s = 0; s < x.seller_win_rate.size(); ++s) {
      if (!same_aggregate(x.seller_win_rate[s], y.seller_win_rate[s]) ||
          !same_aggregate(x.seller_profit[s], y.seller_profit[s]))
        return false;
    }
    for (size_t v = 0; v < x.buyer_value.size(); ++v) {
      if (!same_aggregate(x.buyer_value[v], y.buyer_value[v])) return false;
    }
  }
  return true;
}

AggregateReport run_experiment(const ExperimentConfig& cfg, int parallelism,
                               const PersistOptions* persist, const RunHook& hook) {
  const int n_pops = static_cast<int>(cfg.populations.size());
  const int runs = cfg.runs_per_population;
  const int total = n_pops * runs;

  if (persist) {
    std::filesystem::create_directories(persist->out_dir);
    if (persist->transcripts)
      std::filesystem::create_directories(persist->out_dir / "transcripts");
    if (persist->states) std::filesystem::create_directories(persist->out_dir / "states");
  }

  // One slot per cell, filled independently; aggregation order afterwards is
  // fixed, so the report does not depend on scheduling.
  std::vector<MetricsReport> results(static_cast<size_t>(total));
  std::vector<std::string> errors(static_cast<size_t>(total));

  const auto run_cell = [&](int cell) {
    const int pop = cell / runs;
    const int run = cell % runs;
    const MarketConfig& market = cfg.populations[static_cast<size_t>(pop)];
    const std::uint64_t seed =
        derive_run_seed(cfg.base_seed, static_cast<std::uint64_t>(pop),
                        static_cast<std::uint64_t>(run));
    Simulation sim(market, cfg.params, seed);
    const RunTranscript t = sim.run(cfg.params.auctions);
    MetricsReport m = compute_metrics(t, market, cfg.params.equilibrium_min_len);
    if (persist && persist->transcripts) {
      write_transcript_file(
          persist->out_dir / "transcripts" / transcript_filename(market.name, run), t,
          market);
    }
    if (persist && persist->states) {
      write_states_file(
          persist->out_dir / "states" / (market.name + "_run" + std::to_string(run) + ".json"),
          sim);
    }
    if (hook) hook(pop, run, sim, t, m);
    results[static_cast<size_t>(cell)] = std::move(m);
  };

  if (parallelism <= 1) {
    // Serial reference path; kept simple on purpose so the parallel path can
    // always be checked against it.
    for (int cell = 0; cell < total; ++cell) run_cell(cell);
  } else {
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) num_threads(parallelism)
    for (int cell = 0; cell < total; ++cell) {
      try {
        run_cell(cell);
      } catch (const std::exception& e) {
        errors[static_cast<size_t>(cell)] = e.what();
      } catch (...) {
        errors[static_cast<size_t>(cell)] = "unknown error";
      }
    }
    for (const std::string& e : errors) {
      if (!e.empty()) throw std::runtime_error("experiment run failed: " + e);
    }
#else
    for (int cell = 0; cell < total; ++cell) run_cell(cell);
#endif
  }

  AggregateReport report;
  report.populations.reserve(static_cast<size_t>(n_pops));
  for (int pop = 0; pop < n_pops; ++pop) {
    const std::span<const MetricsReport> slice(
        results.data() + static_cast<size_t>(pop) * static_cast<size_t>(runs),
        static_cast<size_t>(runs));
    report.populations.push_back(aggregate_population(
        cfg.populations[static_cast<size_t>(pop)], cfg.params.auctions, slice));
  }
  return report;
}

}  // namespace agora
