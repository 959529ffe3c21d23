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

#include <optional>
#include <span>
#include <vector>

#include "agora/learning.hpp"
#include "agora/market.hpp"
#include "agora/record.hpp"
#include "agora/rng.hpp"

namespace agora {

// Agents come in three modeling depths. 0-level agents keep plain reward
// estimates over prices. 1-level agents keep frequency models of what the
// others have been doing and best-respond to those. 2-level sellers go one
// step further: they simulate every rival as if it were 1-level, predict the
// rivals' bids, and pick the most profitable price the modeled buyer would
// still accept.
//
// All selection functions draw from the caller's RNG in a fixed order, which
// is what makes whole runs replayable from a seed.

struct Buyer0State {
  RewardTable value_by_price;  // what paying p has been worth lately
  ValueParams value_params;
  AnnealSchedule explore;
  AnnealSchedule learn_rate;
};

struct Seller0State {
  RewardTable profit_by_price;
  Money cost = 0;
  AnnealSchedule explore;
  AnnealSchedule learn_rate;
};

struct Buyer1State {
  // One quality model per seller, fed by this buyer's own purchases.
  std::vector<EmpiricalDensity> seller_quality;
  ValueParams value_params;
  AnnealSchedule explore;
};

struct Seller1State {
  // Prices each buyer has accepted, and bids each rival has placed. The own
  // roster slot in rival_bids stays empty; a seller never models itself.
  std::vector<EmpiricalDensity> accepted_price;
  std::vector<EmpiricalDensity> rival_bids;
  Money cost = 0;
  AnnealSchedule explore;
};

struct Seller2State {
  // One simulated 1-level state per seller (own slot unused), plus a pooled
  // model of buyer behavior. In oracle mode these stay empty and the engine
  // hands the true states in at bid time instead.
  std::vector<Seller1State> rival_models;
  Buyer1State buyer_model;
  Money cost = 0;
  TwoLevelMode mode = TwoLevelMode::Oracle;
  AnnealSchedule explore;
  // Whether the last exploit-path bid had at least one price the modeled
  // buyer would certainly accept from us. Diagnostic for the dominance tests.
  bool last_win_set_nonempty = false;
};

// --- 0-level ---------------------------------------------------------------

// Pick the bid with the best learned value; explore a uniform random bid with
// probability `explore.current`. Ties break uniformly at random.
int buyer0_select(const Buyer0State& b, std::span<const Price> bids, Pcg32& rng);

// Fold the realized value of the purchase into the table, then anneal.
void buyer0_learn(Buyer0State& b, Price price_paid, Quality perceived);

// Highest expected profit among prices at or above cost; never bids below
// cost, exploring or not. Ties break toward the lowest price.
Price seller0_bid(const Seller0State& s, Pcg32& rng);

// Every seller learns from every auction: the winner feeds its margin back,
// the losers feed zero. Anneals afterwards.
void seller0_learn(Seller0State& s, Price bid, bool won);

// --- 1-level ---------------------------------------------------------------

// Expected value of accepting seller `idx`'s bid, as an exact rational
// (numerator over window size). Empty model: no estimate.
struct ExpectedValue {
  long long num = 0;
  int den = 1;
};
std::optional<ExpectedValue> buyer1_expected_value(const Buyer1State& b, int seller,
                                                   Price bid);

// Best expected value wins. Sellers without a quality model yet are sampled
// uniformly before any modeled seller is exploited. Ties break uniformly.
int buyer1_select(const Buyer1State& b, std::span<const Price> bids, Pcg32& rng);

// Record the perceived quality of the chosen seller's good, then anneal.
void buyer1_learn(Buyer1State& b, int winner, Quality perceived);

// Deterministic projection of buyer1_select used when another agent simulates
// the buyer: returns the roster index the buyer is certain to pick, or -1
// when the pick depends on a random draw (a tie, or several unmodeled
// sellers). Exploration is assumed off.
int buyer1_choice_deterministic(const Buyer1State& b, std::span<const Price> bids);

// The profit-maximizing bid against the modeled rivals for this buyer:
// margin times, for every rival, the count of remembered rival bids the buyer
// accepts no more often than our price (a tie in acceptance counts as a win
// for us). Exact integer scoring; ties break toward the lowest price.
// No estimate when the buyer model or any rival model is empty.
std::optional<Price> seller1_best_response(const Seller1State& s, int buyer,
                                           std::span<const int> rivals);

// Best response when models allow it; a uniform admissible bid when exploring
// or when any needed model is still empty.
Price seller1_bid(const Seller1State& s, int buyer, std::span<const int> rivals,
                  Pcg32& rng);

// Fold one broadcast record in: the accepted price for that buyer, and every
// other seller's bid. Never records the own bid. Anneals afterwards.
void seller1_observe(Seller1State& s, int self, const AuctionRecord& rec);

// --- 2-level ---------------------------------------------------------------

// Predict every rival's bid by running its 1-level rule with exploration off,
// then bid the highest price the modeled buyer would still certainly accept
// from us. Falls back to cost when no such price exists, and to a uniform
// admissible bid when exploring or when a needed model is empty.
//
// `rival_states` is roster-aligned; the engine points it at the true states
// (oracle mode) or at `st.rival_models` (learned mode). Own slot is null.
Price seller2_bid(Seller2State& st, int self, int buyer,
                  std::span<const Seller1State* const> rival_states,
                  const Buyer1State& buyer_model, Pcg32& rng);

// Learned mode: replay the broadcast into every simulated rival exactly as
// that rival updates itself, and into the pooled buyer model (which sees the
// winner's configured quality; the buyer's private perception draw is not
// observable). Oracle mode keeps no models, so only the exploration schedule
// advances.
void seller2_observe(Seller2State& st, int self, const AuctionRecord& rec);

}  // namespace agora
