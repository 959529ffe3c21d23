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

// Times the batch runner twice, once on the plain serial loop and once fanned
// out over OpenMP threads, and insists both produce the identical report.

#include <chrono>
#include <cstdio>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "CLI11.hpp"
#include "agora/config.hpp"
#include "agora/experiment.hpp"

namespace {

double timed_run(const agora::ExperimentConfig& cfg, int threads,
                 agora::AggregateReport* out) {
  const auto t0 = std::chrono::steady_clock::now();
  *out = agora::run_experiment(cfg, threads);
  const auto t1 = std::chrono::steady_clock::now();
  return std::chrono::duration<double>(t1 - t0).count();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"serial vs. threaded batch-runner benchmark"};
  std::string preset = "one-1level-seller";
  int runs = 8;
  int auctions = 4000;
  int threads = 0;
  app.add_option("--preset", preset, "experiment to time")->capture_default_str();
  app.add_option("--runs", runs, "runs per population")->capture_default_str();
  app.add_option("--auctions", auctions, "auctions per run")->capture_default_str();
  app.add_option("--threads", threads, "thread count (0 = all cores)")
      ->capture_default_str();
  CLI11_PARSE(app, argc, argv);

#ifdef _OPENMP
  if (threads <= 0) threads = omp_get_max_threads();
#else
  if (threads <= 0) threads = 1;
  std::printf("built without OpenMP; the threaded pass runs serially too\n");
#endif

  agora::ExperimentConfig cfg;
  try {
    cfg = agora::make_preset(preset);
  } catch (const agora::ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 1;
  }
  cfg.runs_per_population = runs;
  cfg.params.auctions = auctions;

  const int cells = static_cast<int>(cfg.populations.size()) * runs;
  std::printf("%s: %d cells of %d auctions\n", preset.c_str(), cells, auctions);

  agora::AggregateReport serial;
  agora::AggregateReport parallel;
  const double ts = timed_run(cfg, 1, &serial);
  std::printf("serial    %8.3f s  (%7.0f auctions/s)\n", ts, cells * auctions / ts);
  const double tp = timed_run(cfg, threads, &parallel);
  std::printf("threads=%-2d%8.3f s  (%7.0f auctions/s)\n", threads, tp,
              cells * auctions / tp);
  std::printf("speedup   %.2fx\n", ts / tp);

  if (!agora::aggregate_equal(serial, parallel)) {
    std::fprintf(stderr, "FAIL: threaded report differs from serial reference\n");
    return 2;
  }
  std::printf("reports identical\n");
  return 0;
}
