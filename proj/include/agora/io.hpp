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
#include <iosfwd>
#include <string>
#include <vector>

#include "agora/auction.hpp"
#include "agora/config.hpp"
#include "agora/experiment.hpp"
#include "agora/record.hpp"

namespace agora {

// Transcript files are plain comma-separated text. Comment lines ("# key=value")
// carry the population name, config fingerprint, seed and rosters; then one
// header row and one row per auction:
//
//   index,buyer,winner,price,perceived_quality,bid:<seller id>,...
//
// Bid columns follow seller roster order. Reading recomputes the config
// fingerprint and refuses transcripts that do not match the supplied config.

std::string transcript_filename(const std::string& population, int run);

void write_transcript(std::ostream& out, const RunTranscript& t,
                      const MarketConfig& market);
void write_transcript_file(const std::filesystem::path& path, const RunTranscript& t,
                           const MarketConfig& market);

struct LoadedTranscript {
  int population_index = -1;
  RunTranscript transcript;
};

LoadedTranscript read_transcript_file(const std::filesystem::path& path,
                                      const ExperimentConfig& cfg);

// Final agent states of one run, as self-describing JSON: schedules, reward
// tables, and model windows (oldest observation first).
void write_states_file(const std::filesystem::path& path, const Simulation& sim);

// Write summary.csv, agents.csv, distribution.csv and report.json into
// out_dir. Returns the paths written. Output is byte-deterministic for a
// given report.
std::vector<std::filesystem::path> emit_outputs(const AggregateReport& report,
                                                const ExperimentConfig& cfg,
                                                const std::filesystem::path& out_dir);

}  // namespace agora
