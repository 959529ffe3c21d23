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

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "CLI11.hpp"
#include "agora/config.hpp"
#include "agora/experiment.hpp"
#include "agora/io.hpp"
#include "json.hpp"

namespace fs = std::filesystem;

namespace {

int hardware_parallelism() {
#ifdef _OPENMP
  return std::max(1, omp_get_max_threads());
#else
  return 1;
#endif
}

void write_resolved_config(const agora::ExperimentConfig& cfg, const fs::path& out_dir) {
  fs::create_directories(out_dir);
  std::ofstream out(out_dir / "resolved_config.json");
  if (!out) throw std::runtime_error((out_dir / "resolved_config.json").string() +
                                     ": cannot open for writing");
  out << agora::config_to_json(cfg).dump(2) << "\n";
}

void print_population_line(const agora::PopulationAggregate& p) {
  std::printf("  %-12s mean price %6.2f +/- %.2f  volatility %.4f  modal %2d (%.2f)"
              "  episodes %.1f covering %.0f%%\n",
              p.name.c_str(), p.mean_price.mean, p.mean_price.se, p.volatility.mean,
              p.modal_price, p.modal_mass.mean, p.episode_count.mean,
              100.0 * p.episode_coverage.mean);
}

int cmd_run(const std::string& config_path, const std::string& preset_name,
            const fs::path& out_dir, int runs_override, int auctions_override,
            std::int64_t seed_override, int parallel,
            const std::vector<std::string>& population_filter, bool save_transcripts,
            bool save_states) {
  agora::ExperimentConfig cfg = preset_name.empty()
                                    ? agora::load_config(config_path)
                                    : agora::make_preset(preset_name);
  if (runs_override > 0) cfg.runs_per_population = runs_override;
  if (auctions_override > 0) cfg.params.auctions = auctions_override;
  if (seed_override >= 0) cfg.base_seed = static_cast<std::uint64_t>(seed_override);

  if (!population_filter.empty()) {
    std::vector<agora::MarketConfig> kept;
    for (const std::string& want : population_filter) {
      const auto it = std::find_if(cfg.populations.begin(), cfg.populations.end(),
                                   [&](const agora::MarketConfig& m) {
                                     return m.name == want;
                                   });
      if (it == cfg.populations.end())
        throw agora::ConfigError("--population " + want + ": no such population");
      kept.push_back(*it);
    }
    cfg.populations = std::move(kept);
  }
  agora::validate_config(cfg);

  const int threads = parallel > 0 ? parallel : hardware_parallelism();
  write_resolved_config(cfg, out_dir);

  agora::PersistOptions persist;
  persist.out_dir = out_dir;
  persist.transcripts = save_transcripts;
  persist.states = save_states;

  std::printf("%zu population(s), %d run(s) each, %d auctions per run, %d thread(s)\n",
              cfg.populations.size(), cfg.runs_per_population, cfg.params.auctions,
              threads);
  const agora::AggregateReport report = agora::run_experiment(cfg, threads, &persist);
  for (const agora::PopulationAggregate& p : report.populations)
    print_population_line(p);

  const std::vector<fs::path> files = agora::emit_outputs(report, cfg, out_dir);
  for (const fs::path& f : files) std::printf("wrote %s\n", f.string().c_str());
  return 0;
}

// Transcript filenames look like <population>_run<K>.csv; pull K back out so
// runs aggregate in a stable order.
int run_number_of(const fs::path& file) {
  const std::string stem = file.stem().string();
  const size_t at = stem.rfind("_run");
  if (at == std::string::npos) return -1;
  try {
    return std::stoi(stem.substr(at + 4));
  } catch (const std::exception&) {
    return -1;
  }
}

int cmd_metrics(const fs::path& dir) {
  const agora::ExperimentConfig cfg = agora::load_config(dir / "resolved_config.json");

  const fs::path tdir = dir / "transcripts";
  if (!fs::is_directory(tdir))
    throw std::runtime_error(tdir.string() +
                             ": not found (run with --save-transcripts first)");

  std::vector<fs::path> files;
  for (const fs::directory_entry& e : fs::directory_iterator(tdir))
    if (e.is_regular_file() && e.path().extension() == ".csv") files.push_back(e.path());
  if (files.empty()) throw std::runtime_error(tdir.string() + ": no transcripts");

  // population index -> (run number, metrics), later sorted by run.
  std::map<int, std::vector<std::pair<int, agora::MetricsReport>>> by_pop;
  for (const fs::path& f : files) {
    const agora::LoadedTranscript lt = agora::read_transcript_file(f, cfg);
    const agora::MarketConfig& market =
        cfg.populations[static_cast<size_t>(lt.population_index)];
    by_pop[lt.population_index].emplace_back(
        run_number_of(f),
        agora::compute_metrics(lt.transcript, market, cfg.params.equilibrium_min_len));
  }

  agora::AggregateReport report;
  for (size_t pi = 0; pi < cfg.populations.size(); ++pi) {
    const auto it = by_pop.find(static_cast<int>(pi));
    if (it == by_pop.end())
      throw std::runtime_error("population " + cfg.populations[pi].name +
                               " has no transcripts in " + tdir.string());
    std::sort(it->second.begin(), it->second.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<agora::MetricsReport> runs;
    runs.reserve(it->second.size());
    for (auto& [run, m] : it->second) runs.push_back(std::move(m));
    report.populations.push_back(
        agora::aggregate_population(cfg.populations[pi], cfg.params.auctions, runs));
  }

  std::printf("recomputed %zu transcript(s)\n", files.size());
  for (const agora::PopulationAggregate& p : report.populations)
    print_population_line(p);
  const std::vector<fs::path> out = agora::emit_outputs(report, cfg, dir);
  for (const fs::path& f : out) std::printf("wrote %s\n", f.string().c_str());
  return 0;
}

int cmd_presets_dump(const std::string& name, const std::string& out_file) {
  const agora::ExperimentConfig cfg = agora::make_preset(name);
  const std::string text = agora::config_to_json(cfg).dump(2) + "\n";
  if (out_file.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(out_file);
    if (!out) throw std::runtime_error(out_file + ": cannot open for writing");
    out << text;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"sealed-bid market simulator with nested opponent models"};
  app.require_subcommand(1);

  std::string config_path;
  std::string preset_name;
  fs::path out_dir = "out";
  int runs_override = 0;
  int auctions_override = 0;
  std::int64_t seed_override = -1;
  int parallel = 0;
  std::vector<std::string> population_filter;
  bool save_transcripts = false;
  bool save_states = false;

  CLI::App* run = app.add_subcommand("run", "run an experiment and write result tables");
  CLI::Option* oc = run->add_option("--config", config_path, "experiment config (JSON)")
                        ->check(CLI::ExistingFile);
  CLI::Option* op = run->add_option("--preset", preset_name, "built-in experiment name");
  oc->excludes(op);
  op->excludes(oc);
  run->add_option("--out", out_dir, "output directory")->capture_default_str();
  run->add_option("--runs", runs_override, "override runs per population");
  run->add_option("--auctions", auctions_override, "override auctions per run");
  run->add_option("--seed", seed_override, "override base seed");
  run->add_option("--parallel", parallel, "worker threads (0 = all cores)")
      ->capture_default_str();
  run->add_option("--population", population_filter,
                  "only run the named population (repeatable)");
  run->add_flag("--save-transcripts", save_transcripts,
                "write per-run auction transcripts");
  run->add_flag("--save-states", save_states, "write final learned state per run");

  fs::path metrics_dir;
  CLI::App* metrics =
      app.add_subcommand("metrics", "recompute result tables from saved transcripts");
  metrics->add_option("--dir", metrics_dir, "output directory of a previous run")
      ->required();

  CLI::App* presets =
      app.add_subcommand("presets", "list or dump built-in experiment configs");
  presets->require_subcommand(1);
  CLI::App* plist = presets->add_subcommand("list", "print preset names");
  std::string dump_name;
  std::string dump_out;
  CLI::App* pdump = presets->add_subcommand("dump", "print a preset config as JSON");
  pdump->add_option("name", dump_name, "preset name")->required();
  pdump->add_option("-o,--out", dump_out, "write to a file instead of stdout");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) {
      if (config_path.empty() && preset_name.empty())
        throw agora::ConfigError("run: pass --config FILE or --preset NAME");
      return cmd_run(config_path, preset_name, out_dir, runs_override,
                     auctions_override, seed_override, parallel, population_filter,
                     save_transcripts, save_states);
    }
    if (metrics->parsed()) return cmd_metrics(metrics_dir);
    if (plist->parsed()) {
      for (const std::string& n : agora::preset_names()) std::cout << n << "\n";
      return 0;
    }
    if (pdump->parsed()) return cmd_presets_dump(dump_name, dump_out);
  } catch (const agora::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
