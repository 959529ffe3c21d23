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
#include <variant>
#include <vector>

#include "agora/agents.hpp"
#include "agora/config.hpp"
#include "agora/record.hpp"
#include "agora/rng.hpp"

namespace agora {

using BuyerState = std::variant<Buyer0State, Buyer1State>;
using SellerState = std::variant<Seller0State, Seller1State, Seller2State>;

struct BuyerAgent {
  BuyerSpec spec;
  BuyerState state;
};

struct SellerAgent {
  SellerSpec spec;
  SellerState state;
};

// One run of repeated auctions over a fixed population. Strictly sequential:
// each auction's broadcast lands before the next one starts, and every random
// draw comes from the single run RNG, so a (config, seed) pair pins down the
// entire transcript.
//
// Auction protocol, in order:
//   1. pick the requesting buyer (round robin by default),
//   2. every seller places a bid, roster order,
//   3. the buyer picks a winner,
//   4. the winner's good is delivered; the buyer perceives its quality,
//   5. the record is broadcast: every seller learns or observes, then the
//      buyer learns.
class Simulation {
public:
  Simulation(const MarketConfig& market, const SimParams& params, std::uint64_t seed);

  // Run one auction for the scheduled buyer.
  AuctionRecord step();

  // Run one auction for an explicit buyer (does not advance the schedule).
  AuctionRecord run_auction_for(int buyer_index);

  // Step `auctions` times and collect the transcript.
  RunTranscript run(int auctions);

  const MarketConfig& market() const { return market_; }
  const SimParams& params() const { return params_; }
  std::uint64_t seed() const { return seed_; }
  std::uint64_t hash() const { return hash_; }
  int auctions_run() const { return auction_index_; }

  const BuyerAgent& buyer(int i) const { return buyers_[static_cast<size_t>(i)]; }
  const SellerAgent& seller(int i) const { return sellers_[static_cast<size_t>(i)]; }
  int buyer_count() const { return static_cast<int>(buyers_.size()); }
  int seller_count() const { return static_cast<int>(sellers_.size()); }

  // Mutable access, for tests that script agent state and for checkpointing.
  BuyerAgent& buyer_mut(int i) { return buyers_[static_cast<size_t>(i)]; }
  SellerAgent& seller_mut(int i) { return sellers_[static_cast<size_t>(i)]; }

private:
  MarketConfig market_;
  SimParams params_;
  std::uint64_t seed_;
  std::uint64_t hash_;
  Pcg32 rng_;
  int auction_index_ = 0;
  std::vector<BuyerAgent> buyers_;
  std::vector<SellerAgent> sellers_;
  std::vector<std::vector<int>> rivals_;  // per seller: everyone else
};

// Convenience wrapper: build, run, return the transcript.
RunTranscript run_simulation(const MarketConfig& market, const SimParams& params,
                             std::uint64_t seed, int auctions);

}  // namespace agora
