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
#include <vector>

#include "agora/market.hpp"

namespace agora {

// Everything one auction produced. `bids` is aligned with the seller roster;
// every seller submits a bid every auction. The record is what gets broadcast
// to modeling agents, written to transcripts, and consumed by metrics.
struct AuctionRecord {
  int index = 0;
  int buyer = 0;   // buyer roster index
  std::vector<Price> bids;
  int winner = 0;  // seller roster index
  Price price_paid = 0;
  Quality true_quality = 0;
  Quality perceived_quality = 0;
  Money winner_profit = 0;
  Money buyer_value = 0;

  bool operator==(const AuctionRecord&) const = default;
};

struct RunTranscript {
  std::uint64_t config_hash = 0;
  std::uint64_t seed = 0;
  std::vector<AuctionRecord> records;

  bool operator==(const RunTranscript&) const = default;
};

}  // namespace agora
